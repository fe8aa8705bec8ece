from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING, final

import numpy as np

if TYPE_CHECKING:
    from collections.abc import Container, Iterable, Sequence

    from ._graph import Graph


@final
@dataclass(frozen=True, slots=True)
class LayeredColoring:
    """An ordered proper coloring, class `C_1` first.

    Classes are 0-indexed here: `classes[0]` is C_1 and `class_of[v] == i`
    means v is in `C_{i+1}`. No class is empty.
    """

    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]

    @classmethod
    def from_assignment(cls, class_of: Sequence[int]) -> LayeredColoring:
        """Builds a coloring from per-vertex class indices, dropping empty classes.

        Relative order of the nonempty classes is kept.
        """
        used = sorted(set(class_of))
        remap = {c: i for i, c in enumerate(used)}
        dense = tuple(remap[c] for c in class_of)
        classes: list[list[int]] = [[] for _ in used]
        for v, c in enumerate(dense):
            classes[c].append(v)
        return cls(tuple(tuple(c) for c in classes), dense)

    @property
    def m(self) -> int:
        """Returns the number of classes."""
        return len(self.classes)


@final
@dataclass(frozen=True, slots=True)
class TriPartition:
    """The split of V(G) into V_1 = C_1, V_2 and V_3 for threshold r."""

    v1: frozenset[int]
    v2: frozenset[int]
    v3: frozenset[int]
    r: int


def smallest_free(taken: Container[int], start: int) -> int:
    """Returns the least integer from `start` upward that is not in `taken`."""
    c = start
    while c in taken:
        c += 1
    return c


def greedy_proper_coloring(g: Graph, order: Iterable[int] | None = None) -> LayeredColoring:
    """Colors each vertex with the smallest class unused by its already-colored neighbors.

    Args:
        g: The graph.
        order: The vertex order, natural index order when omitted.

    Returns:
        A proper coloring with at most Δ+1 classes. Because every vertex took the
        smallest free class, it already has a neighbor in every lower class.
    """
    class_of = [-1] * g.n
    for v in range(g.n) if order is None else order:
        class_of[v] = smallest_free({class_of[u] for u in g.neighbors(v)}, 0)
    return LayeredColoring.from_assignment(class_of)


def shuffled_order(g: Graph, seed: int) -> list[int]:
    """Returns a seeded random vertex order for `greedy_proper_coloring`."""
    return [int(v) for v in np.random.default_rng(seed).permutation(g.n)]


def is_proper(g: Graph, lc: LayeredColoring) -> bool:
    """Returns whether no edge joins two vertices of the same class."""
    return all(lc.class_of[u] != lc.class_of[v] for u, v in g.edges())


def normalize(g: Graph, lc: LayeredColoring) -> LayeredColoring:
    """Moves vertices down until each vertex of C_i has a neighbor in every C_j, j < i.

    Vertices are scanned in increasing class order; a vertex missing some lower
    class moves to the smallest such class and the scan restarts. Every move
    lowers a class index, so the loop terminates. Classes emptied along the way
    are dropped and higher classes shift down.

    Args:
        g: The graph.
        lc: A proper coloring of `g`.

    Returns:
        A proper, normalized coloring with no more classes than `lc`.
    """
    class_of = list(lc.class_of)
    moved = True
    while moved:
        moved = False
        for v in sorted(range(g.n), key=lambda u: (class_of[u], u)):
            seen = {class_of[u] for u in g.neighbors(v)}
            target = next((j for j in range(class_of[v]) if j not in seen), None)
            if target is not None:
                class_of[v] = target
                moved = True
                break
    return LayeredColoring.from_assignment(class_of)


def is_normalized(g: Graph, lc: LayeredColoring) -> bool:
    """Returns whether every vertex has a neighbor in each lower class."""
    for v in range(g.n):
        seen = {lc.class_of[u] for u in g.neighbors(v)}
        if any(j not in seen for j in range(lc.class_of[v])):
            return False
    return True


def class_degree_max(g: Graph, lc: LayeredColoring) -> int:
    """Returns the largest number of neighbors any vertex has inside one class.

    Each class is independent, so a vertex with k neighbors in one class centers
    an induced K_{1,k}. In a K_{1,k}-free graph the value is at most k-1.
    """
    best = 0
    for v in range(g.n):
        counts = Counter(lc.class_of[u] for u in g.neighbors(v))
        if counts:
            best = max(best, max(counts.values()))
    return best


def partition_v123(lc: LayeredColoring, r: int) -> TriPartition:
    """Splits the classes into V_1, V_2 and V_3.

    V_1 is C_1. When more than r classes follow C_1, V_2 is C_2..C_{r+1} and V_3
    the rest; otherwise V_2 is every class after C_1 and V_3 is empty. The test
    is on the actual class count rather than Δ, since greedy may use fewer than
    Δ+1 classes.

    Raises:
        ValueError: If r is less than 1.
    """
    if r < 1:
        msg = f"r must be at least 1, got {r}"
        raise ValueError(msg)
    classes = lc.classes
    v1 = frozenset(classes[0]) if classes else frozenset()
    if len(classes) - 1 > r:
        v2 = frozenset(v for c in classes[1 : r + 1] for v in c)
        v3 = frozenset(v for c in classes[r + 1 :] for v in c)
    else:
        v2 = frozenset(v for c in classes[1:] for v in c)
        v3 = frozenset()
    return TriPartition(v1, v2, v3, r)
