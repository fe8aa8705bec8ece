from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, final

import numpy as np

from ._errors import PreconditionError

if TYPE_CHECKING:
    from collections.abc import Iterable

    from ._graph import Graph


@final
class Hypergraph:
    """A hypergraph on the vertices `0..n-1` with a list of nonempty hyperedges.

    Edges are stored as sorted tuples and addressed by index, so two equal
    vertex sets at different indices are distinct edges. Immutable once built.
    """

    __slots__ = ("_edges", "_incidence", "_n")

    def __init__(self, n: int, edges: Iterable[Iterable[int]]) -> None:
        """Creates a new Hypergraph.

        Args:
            n: The number of vertices.
            edges: The hyperedges, each a collection of distinct vertices.

        Raises:
            ValueError: If an edge is empty or repeats a vertex.
            IndexError: If an edge names a vertex outside `0..n-1`.
        """
        stored: list[tuple[int, ...]] = []
        incidence: list[list[int]] = [[] for _ in range(n)]
        for i, edge in enumerate(edges):
            members = tuple(sorted(edge))
            if not members:
                msg = f"edge {i} is empty"
                raise ValueError(msg)
            if len(set(members)) != len(members):
                msg = f"edge {i} repeats a vertex"
                raise ValueError(msg)
            for v in members:
                if not 0 <= v < n:
                    msg = f"edge {i} names vertex {v} outside 0..{n - 1}"
                    raise IndexError(msg)
                incidence[v].append(i)
            stored.append(members)
        self._n = n
        self._edges = tuple(stored)
        self._incidence = tuple(tuple(ids) for ids in incidence)

    @property
    def n(self) -> int:
        """Returns the number of vertices."""
        return self._n

    @property
    def edges(self) -> tuple[tuple[int, ...], ...]:
        """Returns the hyperedges as sorted vertex tuples."""
        return self._edges

    def incident_edges(self, v: int) -> tuple[int, ...]:
        """Returns the indices of the edges containing `v`."""
        return self._incidence[v]

    def degree(self, v: int) -> int:
        """Returns the number of edges containing `v`."""
        return len(self._incidence[v])

    def edge_neighbors(self, i: int) -> set[int]:
        """Returns the indices of the other edges sharing a vertex with edge `i`."""
        result = {j for v in self._edges[i] for j in self._incidence[v]}
        result.discard(i)
        return result

    def dump(self) -> str:
        """Returns one line per edge listing its vertices, for debugging."""
        return "".join(" ".join(map(str, edge)) + "\n" for edge in self._edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self._n}, edges={len(self._edges)})"


def vertex_degree_max(h: Hypergraph) -> int:
    """Returns the largest number of edges any vertex belongs to."""
    return max((h.degree(v) for v in range(h.n)), default=0)


def max_edge_intersection_count(h: Hypergraph) -> int:
    """Returns Γ, the largest number of other edges any single edge intersects.

    Edges are counted by index, so identical vertex sets at different indices
    count separately.
    """
    return max((len(h.edge_neighbors(i)) for i in range(len(h.edges))), default=0)


def edge_size_range(h: Hypergraph) -> tuple[int, int]:
    """Returns the smallest and largest edge size, `(0, 0)` without edges."""
    sizes = [len(e) for e in h.edges]
    return (min(sizes), max(sizes)) if sizes else (0, 0)


@final
@dataclass(frozen=True, slots=True)
class NeighborhoodHypergraph:
    """The hypergraph of the target-neighborhoods of a set of source vertices.

    Vertex `i` of `hypergraph` is graph vertex `targets[i]` and edge `j` is the
    neighborhood of graph vertex `sources[j]` inside the targets.
    """

    hypergraph: Hypergraph
    targets: tuple[int, ...]
    sources: tuple[int, ...]

    def graph_edge(self, j: int) -> frozenset[int]:
        """Returns edge `j` as graph vertices."""
        return frozenset(self.targets[i] for i in self.hypergraph.edges[j])


def neighborhood_hypergraph(
    g: Graph, sources: Iterable[int], targets: Iterable[int], *, condition: str = "neighborhood"
) -> NeighborhoodHypergraph:
    """Builds the hypergraph whose edges are N(s) ∩ targets for each source s.

    Args:
        g: The graph.
        sources: The vertices contributing one edge each, in increasing order.
        targets: The vertices of the hypergraph, reindexed densely in increasing order.
        condition: The name reported if a source has no neighbor among the targets.

    Raises:
        PreconditionError: If some source has no neighbor among the targets.
    """
    target_list = tuple(sorted(set(targets)))
    index = {v: i for i, v in enumerate(target_list)}
    source_list = tuple(sorted(set(sources)))
    edges: list[list[int]] = []
    for s in source_list:
        edge = [index[u] for u in g.neighbors(s) if u in index]
        if not edge:
            msg = f"vertex {s} has no neighbor among the {len(target_list)} target vertices"
            raise PreconditionError(msg, condition, s)
        edges.append(edge)
    return NeighborhoodHypergraph(Hypergraph(len(target_list), edges), target_list, source_list)


def random_window_hypergraph(
    n_edges: int,
    block: int,
    window: int,
    min_size: int,
    max_size: int,
    seed: int,
) -> Hypergraph:
    """Samples a hypergraph whose edges come from overlapping windows of vertex blocks.

    The vertices are cut into `n_edges` blocks of `block` vertices arranged in a
    ring. Edge `i` draws between `min_size` and `max_size` distinct vertices
    from blocks `i..i+window-1`, so it can only meet edges whose windows overlap
    its own and Γ is at most `2 * (window - 1)`.

    Raises:
        ValueError: If the sizes do not fit in a window.
    """
    span = block * window
    if not 1 <= min_size <= max_size <= span:
        msg = f"edge sizes must satisfy 1 <= {min_size} <= {max_size} <= {span}"
        raise ValueError(msg)
    if window > n_edges:
        msg = f"window {window} exceeds the {n_edges} blocks"
        raise ValueError(msg)
    n = n_edges * block
    rng = np.random.default_rng(seed)
    edges = []
    for i in range(n_edges):
        size = int(rng.integers(min_size, max_size + 1))
        offsets = rng.choice(span, size=size, replace=False)
        edges.append(sorted({(i * block + int(o)) % n for o in offsets}))
    return Hypergraph(n, edges)

