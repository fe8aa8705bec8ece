from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, final

import networkx as nx

from ._concurrency import ordered_map
from ._errors import BoundViolationError, IsolatedVertexError, OracleLimitError
from ._graph import from_networkx, isolated_vertices
from ._telemetry import logger
from ._verify import verify_cfcn, verify_cfon

if TYPE_CHECKING:
    from collections.abc import Iterable

    from ._graph import Graph

DEFAULT_LIMIT = 12
"""Largest vertex count the exhaustive search accepts by default."""


class Neighborhood(Enum):
    """Which neighborhood must contain a uniquely colored vertex."""

    OPEN = "open"
    CLOSED = "closed"


def exact_coloring(
    g: Graph,
    neighborhood: Neighborhood | str = Neighborhood.OPEN,
    max_colors: int | None = None,
    *,
    limit: int = DEFAULT_LIMIT,
) -> tuple[int, ...] | None:
    """Finds a conflict-free coloring of `g` with as few colors as possible.

    Colors q = 1, 2, ... are tried in turn. For each q, vertices are colored in
    index order, a vertex taking at most one color above the largest used so
    far, and a neighborhood is checked as soon as its last vertex is colored.

    Args:
        g: The graph.
        neighborhood: OPEN for CFON, CLOSED for CFCN.
        max_colors: The most colors to try, `g.n` when omitted.
        limit: The most vertices to accept.

    Returns:
        A coloring with colors 1..q for the smallest feasible q, or None if
        more than `max_colors` colors are needed. The empty graph gets the
        empty coloring.

    Raises:
        OracleLimitError: If `g` has more than `limit` vertices.
        IsolatedVertexError: If `g` has isolated vertices and `neighborhood` is OPEN.
    """
    neighborhood = Neighborhood(neighborhood)
    if g.n > limit:
        msg = f"graph has {g.n} vertices, more than the oracle limit {limit}"
        raise OracleLimitError(msg)
    if neighborhood is Neighborhood.OPEN and (isolated := isolated_vertices(g)):
        raise IsolatedVertexError(isolated)
    if max_colors is not None and max_colors < 1:
        msg = f"max_colors must be at least 1, got {max_colors}"
        raise ValueError(msg)
    if g.n == 0:
        return ()
    max_colors = g.n if max_colors is None else max_colors

    closed = neighborhood is Neighborhood.CLOSED
    watched = [
        (*g.neighbors(v), v) if closed else g.neighbors(v) for v in g.vertices()
    ]
    # closes[i] lists the vertices whose neighborhood is fully colored once i is.
    closes: list[list[int]] = [[] for _ in g.vertices()]
    for v, nbhd in enumerate(watched):
        closes[max(nbhd)].append(v)
    colors = [0] * g.n

    def unique(v: int) -> bool:
        return 1 in Counter(colors[u] for u in watched[v]).values()

    def assign(i: int, highest: int, q: int) -> bool:
        if i == g.n:
            return True
        for c in range(1, min(highest + 1, q) + 1):
            colors[i] = c
            if all(unique(v) for v in closes[i]) and assign(i + 1, max(highest, c), q):
                return True
        return False

    for q in range(1, max_colors + 1):
        if assign(0, 0, q):
            found = tuple(colors)
            check = verify_cfcn if closed else verify_cfon
            if bad := check(g, found):
                msg = f"exhaustive search returned a coloring failing at {bad}"
                raise BoundViolationError(msg)
            return found
    return None


def exact_cfon_number(
    g: Graph, max_colors: int | None = None, *, limit: int = DEFAULT_LIMIT
) -> int | None:
    """Returns the CFON chromatic number of `g`, or None if it exceeds `max_colors`."""
    found = exact_coloring(g, Neighborhood.OPEN, max_colors, limit=limit)
    return None if found is None else max(found, default=0)


def exact_cfcn_number(
    g: Graph, max_colors: int | None = None, *, limit: int = DEFAULT_LIMIT
) -> int | None:
    """Returns the CFCN chromatic number of `g`, or None if it exceeds `max_colors`.

    Isolated vertices are allowed: their own color is unique.
    """
    found = exact_coloring(g, Neighborhood.CLOSED, max_colors, limit=limit)
    return None if found is None else max(found, default=0)


def connected_graphs(max_n: int, min_n: int = 2) -> list[tuple[str, Graph]]:
    """Returns every connected graph on `min_n..max_n` vertices up to isomorphism.

    Graphs come from the networkx graph atlas, which covers up to 7 vertices,
    and are named `atlas-<index>`.

    Raises:
        ValueError: If max_n is above 7 or min_n below 1.
    """
    if max_n > 7 or min_n < 1:
        msg = f"graph atlas covers 1..7 vertices, got {min_n}..{max_n}"
        raise ValueError(msg)
    return [
        (f"atlas-{i}", from_networkx(graph))
        for i, graph in enumerate(nx.graph_atlas_g())
        if min_n <= graph.number_of_nodes() <= max_n and nx.is_connected(graph)
    ]


@final
@dataclass(frozen=True, slots=True)
class InequalityRow:
    graph_id: str
    n: int
    m: int
    cfon: int
    cfcn: int

    @property
    def ratio(self) -> float:
        return self.cfcn / self.cfon


@final
@dataclass(frozen=True, slots=True)
class InequalityReport:
    """Exact CFON and CFCN numbers for a corpus, in corpus order."""

    rows: tuple[InequalityRow, ...]

    @property
    def max_ratio(self) -> float | None:
        return max((row.ratio for row in self.rows), default=None)

    def violations(self) -> list[InequalityRow]:
        """Returns the rows where the CFCN number exceeds twice the CFON number."""
        return [row for row in self.rows if row.cfcn > 2 * row.cfon]

    def format_table(self) -> str:
        lines = ["graph_id\tn\tm\tcfon\tcfcn\tratio"]
        lines.extend(
            f"{row.graph_id}\t{row.n}\t{row.m}\t{row.cfon}\t{row.cfcn}\t{row.ratio:.3f}"
            for row in self.rows
        )
        if self.max_ratio is not None:
            lines.append(f"# max_ratio={self.max_ratio:.3f}")
        return "".join(f"{line}\n" for line in lines)


def _row(item: tuple[str, Graph]) -> InequalityRow:
    graph_id, g = item
    cfon = exact_cfon_number(g)
    cfcn = exact_cfcn_number(g)
    if cfon is None or cfcn is None:
        msg = f"{graph_id}: exhaustive search found no coloring with {g.n} colors"
        raise BoundViolationError(msg)
    return InequalityRow(graph_id, g.n, g.m, cfon, cfcn)


def sweep_inequality(
    corpus: Iterable[tuple[str, Graph]], *, workers: int = 1
) -> InequalityReport:
    """Computes both exact numbers for each graph and checks CFCN ≤ 2·CFON.

    Args:
        corpus: Named graphs without isolated vertices, within the oracle limit.
        workers: Graphs searched concurrently.

    Raises:
        BoundViolationError: If a graph needs more than twice as many colors
            for closed neighborhoods as for open ones.
    """
    report = InequalityReport(tuple(ordered_map(_row, list(corpus), workers)))
    logger.debug("Swept %d graphs, max ratio %s", len(report.rows), report.max_ratio)
    if bad := report.violations():
        msg = f"closed-neighborhood number exceeds twice the open one for {[r.graph_id for r in bad]}"
        raise BoundViolationError(msg)
    return report
