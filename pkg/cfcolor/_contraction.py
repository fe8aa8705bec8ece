from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, final

from ._decomposition import smallest_free
from ._errors import BoundViolationError, PreconditionError
from ._telemetry import logger
from ._verify import sees_unique

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping

    from ._graph import Graph


@final
@dataclass(frozen=True, slots=True)
class PartialColoring:
    """A coloring of part of a graph's (or hypergraph's) vertices with colors 1..palette_size."""

    colors: Mapping[int, int]
    palette_size: int

    @property
    def domain(self) -> frozenset[int]:
        """Returns the colored vertices."""
        return frozenset(self.colors)

    def used(self) -> int:
        """Returns the number of distinct colors actually assigned."""
        return len(set(self.colors.values()))


RepresentativeMap = dict[int, int]
"""Maps each Y-vertex to the X-neighbor whose color it must see uniquely."""


def lemma3_bound(d_x: int, d_y: int) -> int:
    """Returns d_X·d_Y + d_X − d_Y + 1, the palette the X-coloring may use."""
    return d_x * d_y + d_x - d_y + 1


def measure_degrees(g: Graph, x: frozenset[int], y: frozenset[int]) -> tuple[int, int]:
    """Returns the tightest `(d_x, d_y)` the instance satisfies.

    d_x is the most neighbors in X of any vertex of X ∪ Y and d_y the most
    neighbors in Y of any vertex of X.
    """
    d_x = max((sum(u in x for u in g.neighbors(v)) for v in x | y), default=0)
    d_y = max((sum(u in y for u in g.neighbors(v)) for v in x), default=0)
    return d_x, d_y


def representatives(g: Graph, x: frozenset[int], y: Iterable[int]) -> RepresentativeMap:
    """Picks the smallest-index X-neighbor of every Y-vertex."""
    return {v: next(u for u in g.neighbors(v) if u in x) for v in y}


def conflict_graph(
    g: Graph, x: frozenset[int], y: Iterable[int], rep: RepresentativeMap
) -> dict[int, set[int]]:
    """Builds the constraint graph on X.

    `rep[y]` is joined to every other X-neighbor of y, and X–X edges of `g` are
    kept. A proper coloring of it gives every y a uniquely colored X-neighbor.
    """
    adj: dict[int, set[int]] = {v: set() for v in x}
    for v in x:
        adj[v].update(u for u in g.neighbors(v) if u in x)
    for v in y:
        r = rep[v]
        for u in g.neighbors(v):
            if u in x and u != r:
                adj[r].add(u)
                adj[u].add(r)
    return adj


def _check_preconditions(
    g: Graph, x: frozenset[int], y: frozenset[int], d_x: int, d_y: int
) -> None:
    if not x or not y or x & y:
        msg = f"X ({len(x)} vertices) and Y ({len(y)} vertices) must be disjoint and nonempty"
        raise PreconditionError(msg, "lemma3(i)")
    for v in sorted(x | y):
        count = sum(u in x for u in g.neighbors(v))
        if count > d_x:
            msg = f"vertex {v} has {count} neighbors in X, more than d_x={d_x}"
            raise PreconditionError(msg, "lemma3(ii)", v)
    for v in sorted(y):
        if not any(u in x for u in g.neighbors(v)):
            msg = f"vertex {v} of Y has no neighbor in X"
            raise PreconditionError(msg, "lemma3(iii)", v)
    for v in sorted(x):
        count = sum(u in y for u in g.neighbors(v))
        if count > d_y:
            msg = f"vertex {v} has {count} neighbors in Y, more than d_y={d_y}"
            raise PreconditionError(msg, "lemma3(iv)", v)


def lemma3_color(
    g: Graph,
    x: Iterable[int],
    y: Iterable[int],
    d_x: int | None = None,
    d_y: int | None = None,
) -> PartialColoring:
    """Colors X so every Y-vertex sees some color exactly once among its X-neighbors.

    Each y gets a representative X-neighbor, the conflict graph separates every
    representative from the other X-neighbors of its y, and greedy proper
    coloring of the conflict graph in index order fixes the colors. The conflict
    graph has maximum degree at most (d_x−1)·d_y + d_x, so at most
    d_x·d_y + d_x − d_y + 1 colors are used.

    Args:
        g: The graph; only G[X ∪ Y] is consulted.
        x: The vertices to color.
        y: The vertices that must each see a unique color.
        d_x: Bound on the X-neighbors of any vertex. Measured when omitted.
        d_y: Bound on the Y-neighbors of any X-vertex. Measured when omitted.

    Raises:
        PreconditionError: If a hypothesis (i)–(iv) fails, naming the vertex.
    """
    xs, ys = frozenset(x), frozenset(y)
    measured_x, measured_y = measure_degrees(g, xs, ys)
    d_x = measured_x if d_x is None else d_x
    d_y = measured_y if d_y is None else d_y
    _check_preconditions(g, xs, ys, d_x, d_y)

    rep = representatives(g, xs, sorted(ys))
    adj = conflict_graph(g, xs, sorted(ys), rep)
    degree_bound = (d_x - 1) * d_y + d_x
    worst = max(len(nbrs) for nbrs in adj.values())
    if worst > degree_bound:
        msg = f"conflict graph degree {worst} exceeds (d_x-1)d_y+d_x = {degree_bound}"
        raise BoundViolationError(msg)

    colors: dict[int, int] = {}
    for v in sorted(xs):
        colors[v] = smallest_free({colors[u] for u in adj[v] if u in colors}, 1)
    palette = max(colors.values())
    bound = lemma3_bound(d_x, d_y)
    if palette > bound:
        msg = f"contraction used {palette} colors, more than the bound {bound}"
        raise BoundViolationError(msg)
    if unseen := sees_unique(g, colors, sorted(ys), xs):
        msg = f"Y-vertices {unseen[:5]} see no unique X-color"
        raise BoundViolationError(msg)
    logger.debug(
        "Contraction colored %d X-vertices with %d colors (d_x=%d, d_y=%d, bound %d)",
        len(xs),
        palette,
        d_x,
        d_y,
        bound,
    )
    return PartialColoring(colors, palette)
