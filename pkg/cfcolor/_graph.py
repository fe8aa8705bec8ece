from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import TYPE_CHECKING, final

import networkx as nx
import numpy as np

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator, Sequence


@final
class Graph:
    """A simple undirected graph on the vertices `0..n-1`.

    Graphs are immutable once constructed and safe to share between threads.
    Self-loops and repeated edges are rejected rather than normalized.
    """

    __slots__ = ("_adj", "_adj_sets", "_labels", "_m")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        *,
        labels: Sequence[str] | None = None,
    ) -> None:
        """Creates a new Graph.

        Args:
            n: The number of vertices.
            edges: The edges as pairs of vertex indices, in either orientation.
            labels: Optional display labels, one per vertex, as read from a file.

        Raises:
            ValueError: If an edge is a self-loop or repeated, or labels do not match n.
            IndexError: If an edge names a vertex outside `0..n-1`.
        """
        if n < 0:
            msg = f"vertex count must be non-negative, got {n}"
            raise ValueError(msg)
        adj: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            _check_vertex(n, u)
            _check_vertex(n, v)
            if u == v:
                msg = f"self-loop at vertex {u}"
                raise ValueError(msg)
            if v in adj[u]:
                msg = f"repeated edge {{{u}, {v}}}"
                raise ValueError(msg)
            adj[u].add(v)
            adj[v].add(u)
            m += 1
        if labels is not None and len(labels) != n:
            msg = f"expected {n} labels, got {len(labels)}"
            raise ValueError(msg)
        self._adj = tuple(tuple(sorted(nbrs)) for nbrs in adj)
        self._adj_sets = tuple(frozenset(nbrs) for nbrs in adj)
        self._labels = tuple(labels) if labels is not None else None
        self._m = m

    @property
    def n(self) -> int:
        """Returns the number of vertices."""
        return len(self._adj)

    @property
    def m(self) -> int:
        """Returns the number of edges."""
        return self._m

    @property
    def labels(self) -> tuple[str, ...] | None:
        """Returns the label table retained from parsing, if any."""
        return self._labels

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Returns the neighbors of `v` in increasing order."""
        _check_vertex(self.n, v)
        return self._adj[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        """Returns the neighbors of `v` as a set."""
        _check_vertex(self.n, v)
        return self._adj_sets[v]

    def degree(self, v: int) -> int:
        """Returns the number of neighbors of `v`."""
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        """Returns whether `u` and `v` are adjacent."""
        _check_vertex(self.n, u)
        return v in self._adj_sets[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yields every edge once as `(u, v)` with `u < v`, in lexicographic order."""
        for u, nbrs in enumerate(self._adj):
            for v in nbrs:
                if u < v:
                    yield u, v

    def vertices(self) -> range:
        """Returns the vertex indices."""
        return range(self.n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj and self._labels == other._labels

    def __hash__(self) -> int:
        return hash((self._adj, self._labels))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@final
@dataclass(frozen=True, slots=True)
class StarWitness:
    """An induced K_{1,k}: a center adjacent to k pairwise non-adjacent leaves."""

    center: int
    leaves: tuple[int, ...]


def _check_vertex(n: int, v: int) -> None:
    if not 0 <= v < n:
        msg = f"vertex {v} out of range for graph with {n} vertices"
        raise IndexError(msg)


def max_degree(g: Graph) -> int:
    """Returns the maximum vertex degree of `g`, or 0 for an edgeless graph."""
    return max((g.degree(v) for v in g.vertices()), default=0)


def open_neighborhood(g: Graph, v: int) -> frozenset[int]:
    """Returns N(v), the neighbors of `v`."""
    return g.neighbor_set(v)


def closed_neighborhood(g: Graph, v: int) -> frozenset[int]:
    """Returns N[v], the neighbors of `v` together with `v` itself."""
    return g.neighbor_set(v) | {v}


def find_induced_star(g: Graph, k: int) -> StarWitness | None:
    """Searches `g` for an induced K_{1,k}.

    For every vertex with at least k neighbors, looks for an independent set of
    size k among its neighbors by backtracking. The search is exponential only
    in k.

    Args:
        g: The graph to search.
        k: The number of leaves, at least 2.

    Returns:
        A witness star, or None if `g` is K_{1,k}-free.
    """
    if k < 2:
        msg = f"k must be at least 2, got {k}"
        raise ValueError(msg)
    for center in g.vertices():
        nbrs = g.neighbors(center)
        if len(nbrs) < k:
            continue
        leaves = _independent_subset(g, nbrs, k)
        if leaves is not None:
            return StarWitness(center, leaves)
    return None


def _independent_subset(
    g: Graph, candidates: Sequence[int], k: int
) -> tuple[int, ...] | None:
    chosen: list[int] = []

    def extend(start: int) -> bool:
        if len(chosen) == k:
            return True
        for i in range(start, len(candidates)):
            if len(chosen) + len(candidates) - i < k:
                return False
            c = candidates[i]
            if any(g.has_edge(c, x) for x in chosen):
                continue
            chosen.append(c)
            if extend(i + 1):
                return True
            chosen.pop()
        return False

    return tuple(chosen) if extend(0) else None


def line_graph(g: Graph) -> Graph:
    """Returns the line graph of `g`.

    Vertex `i` of the result is the i-th edge of `g` in `Graph.edges` order; two
    vertices are adjacent when their edges share an endpoint.

    Raises:
        ValueError: If `g` has no edges.
    """
    base_edges = list(g.edges())
    if not base_edges:
        msg = "line graph of an edgeless graph is empty"
        raise ValueError(msg)
    incident: list[list[int]] = [[] for _ in g.vertices()]
    for i, (u, v) in enumerate(base_edges):
        incident[u].append(i)
        incident[v].append(i)
    edges = {
        pair
        for edge_ids in incident
        for pair in itertools.combinations(edge_ids, 2)
    }
    return Graph(len(base_edges), sorted(edges))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Returns the subgraph induced on `vertices`, reindexed densely.

    Returns:
        The subgraph and the original vertex of each new index.
    """
    kept = tuple(sorted(set(vertices)))
    index = {v: i for i, v in enumerate(kept)}
    edges = [
        (index[u], index[v])
        for u in kept
        for v in g.neighbors(u)
        if u < v and v in index
    ]
    labels = [g.labels[v] for v in kept] if g.labels is not None else None
    return Graph(len(kept), edges, labels=labels), kept


def isolated_vertices(g: Graph) -> tuple[int, ...]:
    """Returns the vertices of degree 0."""
    return tuple(v for v in g.vertices() if not g.neighbors(v))


def remove_isolated(g: Graph) -> tuple[Graph, tuple[int, ...]]:
    """Returns `g` without its isolated vertices, with the original vertex of each new index."""
    return induced_subgraph(g, (v for v in g.vertices() if g.neighbors(v)))


def complete(n: int) -> Graph:
    """Returns the complete graph K_n."""
    return Graph(n, itertools.combinations(range(n), 2))


def path(n: int) -> Graph:
    """Returns the path P_n on n vertices."""
    if n < 1:
        msg = f"path needs at least 1 vertex, got {n}"
        raise ValueError(msg)
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    """Returns the cycle C_n."""
    if n < 3:
        msg = f"cycle needs at least 3 vertices, got {n}"
        raise ValueError(msg)
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def star(k: int) -> Graph:
    """Returns K_{1,k} with hub 0 and leaves 1..k."""
    if k < 1:
        msg = f"star needs at least 1 leaf, got {k}"
        raise ValueError(msg)
    return Graph(k + 1, ((0, i) for i in range(1, k + 1)))


def gnp_random(n: int, p: float, seed: int) -> Graph:
    """Returns an Erdős–Rényi G(n, p) graph drawn from a seeded generator.

    The same arguments always produce the same graph.
    """
    if n < 1:
        msg = f"n must be positive, got {n}"
        raise ValueError(msg)
    if not 0.0 <= p <= 1.0:
        msg = f"p must be within [0, 1], got {p}"
        raise ValueError(msg)
    rng = np.random.default_rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    keep = rng.random(len(pairs)) < p
    return Graph(n, (pair for pair, kept in zip(pairs, keep, strict=True) if kept))


def random_line_graph(n: int, p: float, seed: int) -> Graph:
    """Returns the line graph of `gnp_random(n, p, seed)`.

    Raises:
        ValueError: If the sampled base graph has no edges.
    """
    return line_graph(gnp_random(n, p, seed))


def line_graph_of_complete(n: int) -> Graph:
    """Returns L(K_n), the triangular graph with maximum degree 2(n-2)."""
    return line_graph(complete(n))


def to_networkx(g: Graph) -> nx.Graph:
    """Returns a networkx copy of `g` on the same vertex indices."""
    result = nx.Graph()
    result.add_nodes_from(g.vertices())
    result.add_edges_from(g.edges())
    return result


def from_networkx(graph: nx.Graph) -> Graph:
    """Returns a Graph from a networkx graph, indexing nodes in iteration order."""
    nodes = list(graph.nodes)
    index = {node: i for i, node in enumerate(nodes)}
    edges = [(index[u], index[v]) for u, v in graph.edges]
    return Graph(len(nodes), edges)
