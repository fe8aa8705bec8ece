from __future__ import annotations

from typing import TYPE_CHECKING

from ._contraction import PartialColoring
from ._errors import BoundViolationError, PreconditionError
from ._hypergraph import Hypergraph, neighborhood_hypergraph, vertex_degree_max
from ._telemetry import logger
from ._verify import verify_cf_hypergraph

if TYPE_CHECKING:
    from collections.abc import Iterable

    from ._graph import Graph


def _degree_order(h: Hypergraph) -> list[int]:
    return sorted(range(h.n), key=lambda v: (-h.degree(v), v))


def _greedy(h: Hypergraph, palette: int) -> dict[int, int]:
    colors: dict[int, int] = {}
    for v in _degree_order(h):
        best_color, best_score = 1, None
        for c in range(1, palette + 1):
            colors[v] = c
            score = 0
            for i in h.incident_edges(v):
                counts: dict[int, int] = {}
                for u in h.edges[i]:
                    if u in colors:
                        counts[colors[u]] = counts.get(colors[u], 0) + 1
                if 1 not in counts.values():
                    score += 1
            if best_score is None or score < best_score:
                best_color, best_score = c, score
            if score == 0:
                break
        colors[v] = best_color
    return colors


def _minimal_transversal(vertices: set[int], edges: list[set[int]]) -> set[int]:
    cover = [len(e) for e in edges]
    containing: dict[int, list[int]] = {v: [] for v in vertices}
    for i, e in enumerate(edges):
        for v in e:
            containing[v].append(i)
    kept = {v for v in vertices if containing[v]}
    # A vertex kept here stays necessary: covers only shrink later in the pass.
    for v in sorted(kept, key=lambda u: (len(containing[u]), u)):
        if all(cover[i] >= 2 for i in containing[v]):
            kept.discard(v)
            for i in containing[v]:
                cover[i] -= 1
    return kept


def _peel(h: Hypergraph) -> dict[int, int]:
    colors: dict[int, int] = {}
    vertices = set(range(h.n))
    edges = [set(e) for e in h.edges]
    level = 1
    while edges:
        transversal = _minimal_transversal(vertices, edges)
        for v in vertices - transversal:
            colors[v] = level
        # Edges meeting the transversal once are settled: that vertex gets a
        # deeper color than everything else in the edge. Each transversal
        # vertex loses at least its private edge, so the degree drops by one.
        edges = [r for e in edges if len(r := e & transversal) >= 2]
        vertices = transversal
        level += 1
    for v in vertices:
        colors[v] = level
    return colors


def cf_color_by_degree(h: Hypergraph) -> PartialColoring:
    """Conflict-free colors `h` with at most Δ+1 colors, Δ its maximum vertex degree.

    A greedy pass colors vertices by descending degree, each taking the color
    that leaves the fewest incident edges without a unique color. If an edge is
    still conflicted, the hypergraph is recolored by peeling minimal
    transversals: vertices outside a minimal transversal take the current
    level's color, and the transversal is recolored recursively against the
    edges it meets at least twice. That always finishes within Δ+1 colors.

    Raises:
        BoundViolationError: If the result is not conflict-free or exceeds Δ+1 colors.
    """
    t = vertex_degree_max(h)
    palette = t + 1
    colors = _greedy(h, palette)
    if verify_cf_hypergraph(h, [colors[v] for v in range(h.n)]):
        logger.debug("Greedy conflict-free coloring failed, peeling transversals")
        colors = _peel(h)
    used = max(colors.values(), default=1)
    if used > palette:
        msg = f"conflict-free coloring used {used} colors, more than degree+1 = {palette}"
        raise BoundViolationError(msg)
    if bad := verify_cf_hypergraph(h, [colors[v] for v in range(h.n)]):
        msg = f"edges {bad[:5]} have no uniquely colored vertex"
        raise BoundViolationError(msg)
    return PartialColoring(colors, used)


def exhaustive_cf_coloring(h: Hypergraph, palette: int) -> dict[int, int] | None:
    """Searches every coloring with `palette` colors for a conflict-free one.

    Vertices are tried by descending degree and colors in ascending order; an
    edge is checked as soon as its last vertex is colored. Exponential, meant
    for small instances.

    Returns:
        A conflict-free coloring, or None if none exists with `palette` colors.
    """
    if palette < 1:
        msg = f"palette must be at least 1, got {palette}"
        raise ValueError(msg)
    order = [v for v in _degree_order(h) if h.degree(v)]
    position = {v: i for i, v in enumerate(order)}
    closes: dict[int, list[int]] = {v: [] for v in order}
    for i, edge in enumerate(h.edges):
        closes[max(edge, key=position.__getitem__)].append(i)
    colors = dict.fromkeys(range(h.n), 1)

    def unique(i: int) -> bool:
        counts: dict[int, int] = {}
        for u in h.edges[i]:
            counts[colors[u]] = counts.get(colors[u], 0) + 1
        return 1 in counts.values()

    def assign(depth: int) -> bool:
        if depth == len(order):
            return True
        v = order[depth]
        for c in range(1, palette + 1):
            colors[v] = c
            if all(unique(i) for i in closes[v]) and assign(depth + 1):
                return True
        return False

    return dict(colors) if assign(0) else None


def lemma4_color(
    g: Graph, x: Iterable[int], y: Iterable[int], t_x: int | None = None
) -> PartialColoring:
    """Colors Y so every X-vertex sees some color exactly once among its Y-neighbors.

    The X-neighborhoods inside Y form a hypergraph on Y of maximum degree t_x,
    which is colored conflict-free with at most t_x + 1 colors.

    Args:
        g: The graph.
        x: The vertices that must each see a unique color.
        y: The vertices to color.
        t_x: Bound on the X-neighbors of any Y-vertex. Measured when omitted.

    Raises:
        PreconditionError: If X or Y is empty, they overlap, a Y-vertex has more
            than t_x neighbors in X, or an X-vertex has no neighbor in Y.
    """
    xs, ys = frozenset(x), frozenset(y)
    if not xs or not ys or xs & ys:
        msg = f"X ({len(xs)} vertices) and Y ({len(ys)} vertices) must be disjoint and nonempty"
        raise PreconditionError(msg, "lemma4(i)")
    if t_x is not None:
        for v in sorted(ys):
            count = sum(u in xs for u in g.neighbors(v))
            if count > t_x:
                msg = f"vertex {v} has {count} neighbors in X, more than t_x={t_x}"
                raise PreconditionError(msg, "lemma4(ii)", v)
    nh = neighborhood_hypergraph(g, xs, ys, condition="lemma4(iii)")
    result = cf_color_by_degree(nh.hypergraph)
    colors = {nh.targets[i]: c for i, c in result.colors.items()}
    logger.debug(
        "Degree colorer colored %d Y-vertices with %d colors (t_x=%d)",
        len(ys),
        result.palette_size,
        vertex_degree_max(nh.hypergraph),
    )
    return PartialColoring(colors, result.palette_size)
