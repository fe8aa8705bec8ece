from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, final

import networkx as nx

from ._contraction import lemma3_color
from ._decomposition import (
    class_degree_max,
    greedy_proper_coloring,
    is_normalized,
    normalize,
    partition_v123,
)
from ._degree import lemma4_color
from ._errors import (
    BoundViolationError,
    IsolatedVertexError,
    NotClawFreeError,
    ResamplingTimeout,
)
from ._graph import find_induced_star, isolated_vertices, max_degree
from ._hypergraph import max_edge_intersection_count, neighborhood_hypergraph
from ._lll import (
    DEFAULT_MAX_ROUNDS,
    Lemma2Params,
    ResampleResult,
    TimeoutReport,
    compute_r,
    edge_size_params,
    moser_tardos_cf,
)
from ._telemetry import colors_histogram, default_seed, get_meter, get_tracer, logger
from ._verify import unique_witnesses, verify_cfcn, verify_cfon

if TYPE_CHECKING:
    from collections.abc import Hashable, Sequence

    from opentelemetry.metrics import MeterProvider
    from opentelemetry.trace import TracerProvider

    from ._decomposition import LayeredColoring, TriPartition
    from ._graph import Graph

PairColor = tuple[int, int]


class Mode(Enum):
    """How palettes are sized.

    THEOREM uses the worst-case constants for k and r. TIGHT measures degrees,
    edge sizes and Γ from the instance and lays out only the colors used.
    """

    THEOREM = "theorem"
    TIGHT = "tight"


def theorem_color_bound(k: int, r: int) -> int:
    """Returns (k−1)(k−2)r + k + 32(k−1)kr + k, the most pair colors the product uses."""
    return (k - 1) * (k - 2) * r + k + 32 * (k - 1) * k * r + k


@final
@dataclass(frozen=True, slots=True)
class PaletteLayout:
    """Sizes of the three disjoint integer palettes.

    N_1 is 1..r1, N_2 is r1+1..r1+r2 and N_3 is r1+r2+1..r1+r2+r3.
    """

    r1: int
    r2: int
    r3: int

    @classmethod
    def for_theorem(cls, k: int, r: int) -> PaletteLayout:
        return cls((k - 1) * (k - 2) * r + k, 32 * (k - 1) * r, k)

    @property
    def n1(self) -> range:
        return range(1, self.r1 + 1)

    @property
    def n2(self) -> range:
        return range(self.r1 + 1, self.r1 + self.r2 + 1)

    @property
    def n3(self) -> range:
        return range(self.r1 + self.r2 + 1, self.r1 + self.r2 + self.r3 + 1)

    @property
    def capacity(self) -> int:
        """Returns |N_1| + |N_2|·|N_3| + |N_3|, the most distinct pairs possible."""
        return self.r1 + self.r2 * self.r3 + self.r3


@final
@dataclass(frozen=True, slots=True)
class FlatColoring:
    """Pair colors renumbered to consecutive integers.

    `pairs[c - 1]` is the pair behind flat color `c`; flat colors follow the
    sorted order of the pairs.
    """

    colors: tuple[int, ...]
    pairs: tuple[PairColor, ...]


@final
@dataclass(frozen=True, slots=True)
class ProductColoring:
    """The pair coloring f with its palette layout.

    V_1 vertices get `(1, f1)`, V_2 vertices `(f2, f3)` and V_3 vertices
    `(1, f3)`, with f1, f2 and f3 drawn from N_1, N_2 and N_3.
    """

    colors: tuple[PairColor, ...]
    layout: PaletteLayout

    def flatten(self) -> FlatColoring:
        pairs = tuple(sorted(set(self.colors)))
        index = {p: i + 1 for i, p in enumerate(pairs)}
        return FlatColoring(tuple(index[p] for p in self.colors), pairs)


def total_colors(pc: ProductColoring) -> int:
    """Returns the number of distinct pairs `pc` uses."""
    return len(set(pc.colors))


@final
@dataclass(frozen=True, slots=True)
class CfonCertificate:
    """For every vertex, the neighbor whose pair color is unique in its open neighborhood."""

    witness: tuple[tuple[int, PairColor], ...]

    def check(self, g: Graph, colors: tuple[PairColor, ...]) -> list[int]:
        """Returns the vertices whose recorded witness does not hold."""
        bad = []
        for v, (u, pair) in enumerate(self.witness):
            if not g.has_edge(u, v) or colors[u] != pair:
                bad.append(v)
                continue
            if sum(colors[w] == pair for w in g.neighbors(v)) != 1:
                bad.append(v)
        return bad


@final
@dataclass(frozen=True, slots=True)
class CfonResult:
    """A verified CFON coloring with everything needed to audit it."""

    coloring: ProductColoring
    certificate: CfonCertificate
    layered: LayeredColoring
    partition: TriPartition
    k: int
    r: int
    mode: Mode
    seed: int
    lemma2: ResampleResult | None
    theorem_compliant: bool

    @property
    def total_colors(self) -> int:
        return total_colors(self.coloring)


def build_certificate(g: Graph, colors: tuple[PairColor, ...]) -> CfonCertificate:
    """Picks for each vertex its lowest-index neighbor with a uniquely occurring pair.

    Raises:
        BoundViolationError: If some vertex has no such neighbor.
    """
    witness = []
    for v, u in enumerate(unique_witnesses(g, colors)):
        if u is None:
            msg = f"vertex {v} sees no uniquely colored neighbor"
            raise BoundViolationError(msg)
        witness.append((u, colors[u]))
    return CfonCertificate(tuple(witness))


def check_claw_free(g: Graph, k: int) -> None:
    """Raises NotClawFreeError if `g` contains an induced K_{1,k}."""
    witness = find_induced_star(g, k)
    if witness is not None:
        raise NotClawFreeError(witness)


def cfon_color(
    g: Graph,
    k: int = 3,
    mode: Mode | str = Mode.TIGHT,
    seed: int | None = None,
    *,
    r_test: int | None = None,
    exact_gamma: bool = True,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    tracer_provider: TracerProvider | None = None,
    meter_provider: MeterProvider | None = None,
) -> CfonResult:
    """Colors a K_{1,k}-free graph without isolated vertices so every vertex sees a unique color.

    The graph is greedily colored and normalized, its classes split into V_1,
    V_2 and V_3 at threshold r, and three colorings are combined into pairs:
    f1 on V_1 so every V_2-vertex sees a unique f1-color, f2 on V_2 so every
    V_3-vertex sees a unique f2-color, and f3 on V_2 ∪ V_3 so every V_1-vertex
    sees a unique f3-color. The result is checked by an independent verifier.

    Args:
        g: The graph.
        k: Star size the graph excludes, at least 3.
        mode: THEOREM for worst-case palettes, TIGHT for measured ones.
        seed: Seed for the resampling stage, `default_seed()` when omitted.
        r_test: Replaces r = compute_r(Δ²) to reach V_3 on small graphs. The
            result is then not theorem-compliant.
        exact_gamma: In TIGHT mode, measure Γ of the V_3 hypergraph exactly
            rather than bounding it by Δ².
        max_rounds: Resampling limit for the V_3 stage.
        tracer_provider: The tracer provider to use, the global one when omitted.
        meter_provider: The meter provider to use, the global one when omitted.

    Raises:
        ValueError: If k < 3 or r_test < 1.
        IsolatedVertexError: If `g` has isolated vertices.
        NotClawFreeError: If `g` contains an induced K_{1,k}.
        PreconditionError: If a lemma hypothesis fails.
        ResamplingTimeout: If the V_3 stage does not converge within `max_rounds`.
    """
    mode = Mode(mode)
    if k < 3:
        msg = f"k must be at least 3, got {k}"
        raise ValueError(msg)
    if r_test is not None and r_test < 1:
        msg = f"r_test must be at least 1, got {r_test}"
        raise ValueError(msg)
    seed = default_seed() if seed is None else seed
    tracer = get_tracer(tracer_provider)
    with tracer.start_as_current_span("cfon_color") as span:
        span.set_attribute("cfcolor.k", k)
        span.set_attribute("cfcolor.mode", mode.value)
        span.set_attribute("cfcolor.seed", seed)
        span.set_attribute("graph.vertices", g.n)
        try:
            result = _color(
                g,
                k,
                mode,
                seed,
                r_test=r_test,
                exact_gamma=exact_gamma,
                max_rounds=max_rounds,
                tracer_provider=tracer_provider,
                meter_provider=meter_provider,
            )
        except Exception as e:
            span.set_attribute("error.type", type(e).__name__)
            raise
        span.set_attribute("cfcolor.colors", result.total_colors)
        span.set_attribute("cfcolor.theorem_compliant", result.theorem_compliant)
    colors_histogram(get_meter(meter_provider)).record(
        result.total_colors, {"cfcolor.mode": mode.value}
    )
    return result


def _color(
    g: Graph,
    k: int,
    mode: Mode,
    seed: int,
    *,
    r_test: int | None,
    exact_gamma: bool,
    max_rounds: int,
    tracer_provider: TracerProvider | None,
    meter_provider: MeterProvider | None,
) -> CfonResult:
    tracer = get_tracer(tracer_provider)
    if isolated := isolated_vertices(g):
        raise IsolatedVertexError(isolated)
    check_claw_free(g, k)
    delta = max_degree(g)
    r = compute_r(delta * delta) if r_test is None else r_test

    with tracer.start_as_current_span("decompose") as span:
        layered = normalize(g, greedy_proper_coloring(g))
        if not is_normalized(g, layered):
            msg = "normalized coloring still has a vertex missing a lower class"
            raise BoundViolationError(msg)
        if (worst := class_degree_max(g, layered)) > k - 1:
            msg = f"a vertex has {worst} neighbors in one class of a K_1,{k}-free graph"
            raise BoundViolationError(msg)
        partition = partition_v123(layered, r)
        span.set_attribute("graph.max_degree", delta)
        span.set_attribute("cfcolor.classes", layered.m)
        span.set_attribute("cfcolor.r", r)
    logger.debug(
        "Decomposed %d vertices into %d classes: |V1|=%d |V2|=%d |V3|=%d (r=%d)",
        g.n,
        layered.m,
        len(partition.v1),
        len(partition.v2),
        len(partition.v3),
        r,
    )
    v1, v2, v3 = partition.v1, partition.v2, partition.v3
    theorem = mode is Mode.THEOREM

    with tracer.start_as_current_span("lemma3"):
        if theorem:
            f1 = lemma3_color(g, v1, v2, d_x=k - 1, d_y=r * (k - 1))
        else:
            f1 = lemma3_color(g, v1, v2)

    lemma2: ResampleResult | None = None
    with tracer.start_as_current_span("lemma2") as span:
        span.set_attribute("cfcolor.lemma2.ran", bool(v3))
        if v3:
            nh = neighborhood_hypergraph(g, v3, v2, condition="lemma2(ii)")
            if theorem:
                params = Lemma2Params.scaled(r, k - 1, delta * delta)
            else:
                gamma = (
                    max_edge_intersection_count(nh.hypergraph) if exact_gamma else delta * delta
                )
                params = edge_size_params(nh.hypergraph, gamma)
            outcome = moser_tardos_cf(
                nh.hypergraph,
                params,
                seed,
                max_rounds,
                tracer_provider=tracer_provider,
                meter_provider=meter_provider,
            )
            if isinstance(outcome, TimeoutReport):
                raise ResamplingTimeout(outcome)
            lemma2 = outcome
            raw = {
                nh.targets[i]: c if nh.hypergraph.degree(i) else 1
                for i, c in outcome.coloring.colors.items()
            }
            if theorem:
                f2 = raw
                r2 = params.palette
            else:
                rank = {c: i + 1 for i, c in enumerate(sorted(set(raw.values())))}
                f2 = {v: rank[c] for v, c in raw.items()}
                r2 = len(rank)
        else:
            f2 = dict.fromkeys(v2, 1)
            r2 = 32 * (k - 1) * r if theorem else 1

    with tracer.start_as_current_span("lemma4"):
        f3 = lemma4_color(g, v1, v2 | v3, t_x=k - 1 if theorem else None)

    if theorem:
        layout = PaletteLayout.for_theorem(k, r)
    else:
        layout = PaletteLayout(f1.palette_size, r2, f3.palette_size)
    base2 = layout.r1
    base3 = layout.r1 + layout.r2
    colors: list[PairColor] = []
    for v in g.vertices():
        if v in v1:
            colors.append((1, f1.colors[v]))
        elif v in v2:
            colors.append((base2 + f2[v], base3 + f3.colors[v]))
        else:
            colors.append((1, base3 + f3.colors[v]))
    product = ProductColoring(tuple(colors), layout)

    with tracer.start_as_current_span("verify") as span:
        if violators := verify_cfon(g, product.colors):
            msg = f"product coloring fails at vertices {violators[:5]}"
            raise BoundViolationError(msg)
        certificate = build_certificate(g, product.colors)
        used = total_colors(product)
        span.set_attribute("cfcolor.colors", used)
        if used > layout.capacity:
            msg = f"{used} pair colors exceed the layout capacity {layout.capacity}"
            raise BoundViolationError(msg)
        if theorem and used > theorem_color_bound(k, r):
            msg = f"{used} pair colors exceed the bound {theorem_color_bound(k, r)}"
            raise BoundViolationError(msg)
    logger.debug(
        "Verified CFON coloring with %d colors (r1=%d r2=%d r3=%d)",
        used,
        layout.r1,
        layout.r2,
        layout.r3,
    )
    compliant = r_test is None and (lemma2 is None or lemma2.params.theorem_compliant)
    return CfonResult(
        product, certificate, layered, partition, k, r, mode, seed, lemma2, compliant
    )


def theorem_palette_ceiling(k: int, delta: int) -> int:
    """Returns theorem_color_bound for the r that maximum degree `delta` implies."""
    return theorem_color_bound(k, compute_r(delta * delta))


def log_palette_ratio(k: int, delta: int, colors: int) -> float:
    """Returns colors / (k² ln Δ), the constant hidden in the O(k² ln Δ) bound.

    Raises:
        ValueError: If delta is less than 2.
    """
    if delta < 2:
        msg = f"delta must be at least 2, got {delta}"
        raise ValueError(msg)
    return colors / (k * k * math.log(delta))


def cfcn_from_cfon(g: Graph, coloring: Sequence[Hashable]) -> list[tuple[Hashable, int]]:
    """Turns a CFON coloring into a CFCN coloring with at most twice the colors.

    Each vertex keeps its color and gets a side bit. A vertex whose witness
    neighbor shares its color must take the other side from it. Those
    constraints form a forest: a cycle of three or more would put two equally
    colored vertices in one open neighborhood, so the only cycles are mutual
    pairs, which are single edges.

    Raises:
        ValueError: If `coloring` is not a CFON coloring of `g`.
    """
    witnesses = unique_witnesses(g, coloring)
    if None in witnesses:
        msg = f"not a CFON coloring, vertices {[v for v, u in enumerate(witnesses) if u is None][:5]} see no unique color"
        raise ValueError(msg)
    forest = nx.Graph()
    forest.add_nodes_from(g.vertices())
    forest.add_edges_from(
        (v, u) for v, u in enumerate(witnesses) if u is not None and coloring[u] == coloring[v]
    )
    side = nx.bipartite.color(forest)
    closed = [(coloring[v], side[v] + 1) for v in g.vertices()]
    if bad := verify_cfcn(g, closed):
        msg = f"side bits left vertices {bad[:5]} without a unique color"
        raise BoundViolationError(msg)
    return closed
