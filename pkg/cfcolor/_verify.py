from __future__ import annotations

from collections import Counter
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Hashable, Iterable, Sequence

    from ._graph import Graph
    from ._hypergraph import Hypergraph

# Verifiers read only the graph and the colors and must not import the constructions.


def _has_unique(colors: Iterable[Hashable]) -> bool:
    return 1 in Counter(colors).values()


def verify_cfon(g: Graph, coloring: Sequence[Hashable]) -> list[int]:
    """Returns the vertices with no color appearing exactly once among their neighbors.

    An empty list means `coloring` is a CFON coloring. Isolated vertices always
    violate, since their open neighborhood is empty.
    """
    _check_length(g, coloring)
    return [
        v
        for v in g.vertices()
        if not _has_unique(coloring[u] for u in g.neighbors(v))
    ]


def verify_cfcn(g: Graph, coloring: Sequence[Hashable]) -> list[int]:
    """Returns the vertices with no color appearing exactly once in their closed neighborhood.

    An empty list means `coloring` is a CFCN coloring.
    """
    _check_length(g, coloring)
    return [
        v
        for v in g.vertices()
        if not _has_unique([coloring[v], *(coloring[u] for u in g.neighbors(v))])
    ]


def verify_cf_hypergraph(h: Hypergraph, coloring: Sequence[Hashable]) -> list[int]:
    """Returns the indices of hyperedges without a uniquely colored vertex."""
    return [
        i for i, edge in enumerate(h.edges) if not _has_unique(coloring[v] for v in edge)
    ]


def sees_unique(
    g: Graph, coloring: dict[int, int], watchers: Iterable[int], side: frozenset[int]
) -> list[int]:
    """Returns the watchers that see no color exactly once among their neighbors in `side`.

    `coloring` only needs to cover `side`.
    """
    return [
        w
        for w in watchers
        if not _has_unique(coloring[u] for u in g.neighbors(w) if u in side)
    ]


def _check_length(g: Graph, coloring: Sequence[Hashable]) -> None:
    if len(coloring) != g.n:
        msg = f"coloring covers {len(coloring)} vertices but the graph has {g.n}"
        raise ValueError(msg)


def unique_witnesses(
    g: Graph, coloring: Sequence[Hashable], *, closed: bool = False
) -> list[int | None]:
    """Returns, per vertex, the lowest vertex of its neighborhood whose color occurs there once.

    The neighborhood is N(v), or N[v] when `closed`. None marks a violator.
    """
    _check_length(g, coloring)
    result: list[int | None] = []
    for v in g.vertices():
        members = sorted((*g.neighbors(v), v)) if closed else g.neighbors(v)
        counts = Counter(coloring[u] for u in members)
        result.append(next((u for u in members if counts[coloring[u]] == 1), None))
    return result
