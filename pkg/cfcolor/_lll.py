from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, final

import numpy as np

from ._concurrency import ordered_map
from ._contraction import PartialColoring
from ._errors import PreconditionError
from ._hypergraph import edge_size_range
from ._telemetry import get_meter, get_tracer, logger, resample_counter, resample_logger

if TYPE_CHECKING:
    from collections.abc import Callable, Collection, Sequence

    from opentelemetry.metrics import MeterProvider
    from opentelemetry.trace import TracerProvider

    from ._hypergraph import Hypergraph

R_FLOOR = 2**12
"""The smallest edge size the existence argument works with."""

DEFAULT_MAX_ROUNDS = 10**6


def compute_r(gamma: int) -> int:
    """Returns max(2^12, ⌈136 ln(16Γ)⌉), the size floor for intersection count Γ.

    Raises:
        ValueError: If gamma is negative.
    """
    if gamma < 0:
        msg = f"gamma must be non-negative, got {gamma}"
        raise ValueError(msg)
    if gamma == 0:
        return R_FLOOR
    return max(R_FLOOR, math.ceil(136 * math.log(16 * gamma)))


def crossover_gamma() -> int:
    """Returns the smallest Γ for which compute_r exceeds 2^12."""
    gamma = math.floor(math.exp(R_FLOOR / 136) / 16)
    while compute_r(gamma) > R_FLOOR:
        gamma -= 1
    while compute_r(gamma) <= R_FLOOR:
        gamma += 1
    return gamma


@final
@dataclass(frozen=True, slots=True)
class Lemma2Params:
    """Parameters of the near-uniform hypergraph coloring.

    Edge sizes must lie in [r, c·r] and the palette is 32·c·r. The parameters
    are theorem-compliant only when r is at least compute_r(gamma); smaller r
    is the scaled mode used for experiments, where success is empirical.
    """

    r: int
    c: int
    gamma: int
    palette: int

    @classmethod
    def for_theorem(cls, gamma: int, c: int) -> Lemma2Params:
        """Returns the parameters with r = compute_r(gamma)."""
        r = compute_r(gamma)
        return cls.scaled(r, c, gamma)

    @classmethod
    def scaled(cls, r: int, c: int, gamma: int, palette: int | None = None) -> Lemma2Params:
        """Returns parameters with a caller-chosen r and, optionally, palette.

        Raises:
            ValueError: If r, c or the palette is less than 1.
        """
        if r < 1 or c < 1:
            msg = f"r and c must be at least 1, got r={r}, c={c}"
            raise ValueError(msg)
        palette = 32 * c * r if palette is None else palette
        if palette < 1:
            msg = f"palette must be at least 1, got {palette}"
            raise ValueError(msg)
        return cls(r, c, gamma, palette)

    @property
    def theorem_compliant(self) -> bool:
        return self.r >= compute_r(self.gamma) and self.palette >= 32 * self.c * self.r


@final
@dataclass(frozen=True, slots=True)
class ResampleResult:
    """A conflict-free coloring found by resampling."""

    coloring: PartialColoring
    resamples: int
    transcript: tuple[int, ...]
    params: Lemma2Params
    seed: int


@final
@dataclass(frozen=True, slots=True)
class TimeoutReport:
    """The state of a resampling run stopped at its round limit."""

    resamples: int
    bad_edges: int
    params: Lemma2Params
    seed: int


def is_bad_edge(edge: Collection[int], coloring: Sequence[int]) -> bool:
    """Returns whether no vertex of `edge` has a color unique within the edge."""
    counts: dict[int, int] = {}
    for v in edge:
        counts[coloring[v]] = counts.get(coloring[v], 0) + 1
    return 1 not in counts.values()


def check_edge_sizes(h: Hypergraph, params: Lemma2Params) -> None:
    """Raises PreconditionError unless every edge size lies in [r, c·r]."""
    upper = params.c * params.r
    for i, edge in enumerate(h.edges):
        if not params.r <= len(edge) <= upper:
            msg = f"edge {i} has {len(edge)} vertices, outside [{params.r}, {upper}]"
            raise PreconditionError(msg, "lemma2(ii)")


def moser_tardos_cf(
    h: Hypergraph,
    params: Lemma2Params,
    seed: int,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    *,
    on_resample: Callable[[int, Sequence[int], Sequence[int]], None] | None = None,
    tracer_provider: TracerProvider | None = None,
    meter_provider: MeterProvider | None = None,
) -> ResampleResult | TimeoutReport:
    """Conflict-free colors `h` by resampling bad edges until none remain.

    Every vertex starts with a uniform color from 1..palette. While some edge
    has no uniquely colored vertex, the lowest-index such edge has all its
    vertices recolored uniformly; nothing else changes in that round.

    Args:
        h: The hypergraph.
        params: Size bounds and palette.
        seed: Seed of the single random generator the run draws from.
        max_rounds: The most resamples before giving up.
        on_resample: Called after each resample with the edge index and the
            colorings before and after.
        tracer_provider: The tracer provider to use, the global one when omitted.
        meter_provider: The meter provider to use, the global one when omitted.

    Returns:
        The coloring with its resample transcript, or a TimeoutReport with the
        number of edges still bad when `max_rounds` is exceeded.

    Raises:
        PreconditionError: If an edge size lies outside [r, c·r].
    """
    if max_rounds < 1:
        msg = f"max_rounds must be at least 1, got {max_rounds}"
        raise ValueError(msg)
    check_edge_sizes(h, params)
    counter = resample_counter(get_meter(meter_provider))
    with get_tracer(tracer_provider).start_as_current_span("moser_tardos_cf") as span:
        span.set_attribute("cfcolor.lll.edges", len(h.edges))
        span.set_attribute("cfcolor.lll.palette", params.palette)
        span.set_attribute("cfcolor.lll.theorem_compliant", params.theorem_compliant)
        rng = np.random.default_rng(seed)
        coloring = [int(c) for c in rng.integers(1, params.palette + 1, size=h.n)]
        bad = {i for i, edge in enumerate(h.edges) if is_bad_edge(edge, coloring)}
        heap = sorted(bad)
        transcript: list[int] = []
        while heap:
            i = heapq.heappop(heap)
            if i not in bad:
                continue
            if len(transcript) >= max_rounds:
                heapq.heappush(heap, i)
                span.set_attribute("cfcolor.lll.resamples", len(transcript))
                span.set_attribute("error.type", "ResamplingTimeout")
                counter.add(len(transcript))
                logger.debug(
                    "Resampling stopped after %d rounds with %d bad edges",
                    len(transcript),
                    len(bad),
                )
                return TimeoutReport(len(transcript), len(bad), params, seed)
            edge = h.edges[i]
            before = tuple(coloring) if on_resample is not None else ()
            for v, c in zip(edge, rng.integers(1, params.palette + 1, size=len(edge)), strict=True):
                coloring[v] = int(c)
            transcript.append(i)
            resample_logger.debug("Resampled edge %d (round %d)", i, len(transcript))
            if on_resample is not None:
                on_resample(i, before, tuple(coloring))
            for j in (i, *h.edge_neighbors(i)):
                if is_bad_edge(h.edges[j], coloring):
                    if j not in bad:
                        bad.add(j)
                        heapq.heappush(heap, j)
                    elif j == i:
                        heapq.heappush(heap, j)
                else:
                    bad.discard(j)
        span.set_attribute("cfcolor.lll.resamples", len(transcript))
        counter.add(len(transcript))
    logger.debug("Resampling converged after %d rounds", len(transcript))
    return ResampleResult(
        PartialColoring(dict(enumerate(coloring)), params.palette),
        len(transcript),
        tuple(transcript),
        params,
        seed,
    )


def expected_collisions(edge_size: int, palette: int) -> float:
    """Returns E[X_E] = s·(1 − (1 − 1/q)^(s−1)) for a uniformly colored edge of size s."""
    return edge_size * (1 - (1 - 1 / palette) ** (edge_size - 1))


@final
@dataclass(frozen=True, slots=True)
class CollisionStats:
    """Monte-Carlo estimates for one uniformly colored edge.

    X_E counts the vertices whose color repeats within the edge; the edge is
    bad when X_E equals its size.
    """

    edge_size: int
    palette: int
    trials: int
    seed: int
    mean_x_e: float
    std_error: float
    p_all_collide: float

    @property
    def expected_x_e(self) -> float:
        return expected_collisions(self.edge_size, self.palette)

    def format_record(self) -> str:
        """Returns the statistics as one `key=value` line."""
        return (
            f"edge_size={self.edge_size} palette={self.palette} trials={self.trials} "
            f"seed={self.seed} mean_x_e={self.mean_x_e:.6f} std_error={self.std_error:.6f} "
            f"expected_x_e={self.expected_x_e:.6f} p_all_collide={self.p_all_collide:.6f}"
        )


_CHUNK = 8192


def _collisions(rng: np.random.Generator, edge_size: int, palette: int, trials: int) -> tuple[float, float, int]:
    total = 0.0
    total_sq = 0.0
    all_collide = 0
    remaining = trials
    while remaining:
        rows = min(remaining, _CHUNK)
        colors = np.sort(rng.integers(1, palette + 1, size=(rows, edge_size)), axis=1)
        same = colors[:, 1:] == colors[:, :-1]
        repeated = np.zeros(colors.shape, dtype=bool)
        repeated[:, 1:] |= same
        repeated[:, :-1] |= same
        x = repeated.sum(axis=1)
        total += float(x.sum())
        total_sq += float((x.astype(np.float64) ** 2).sum())
        all_collide += int((x == edge_size).sum())
        remaining -= rows
    return total, total_sq, all_collide


def collision_statistics(
    edge_size: int, palette: int, trials: int, seed: int, *, workers: int = 1
) -> CollisionStats:
    """Estimates E[X_E] and Pr[X_E = |E|] for one edge colored uniformly at random.

    Trials are split evenly over `workers`, each drawing from its own stream
    spawned from `seed`, and merged by worker index, so the result depends only
    on the arguments.

    Raises:
        ValueError: If an argument is less than 1.
    """
    for name, value in (("edge_size", edge_size), ("palette", palette), ("trials", trials), ("workers", workers)):
        if value < 1:
            msg = f"{name} must be at least 1, got {value}"
            raise ValueError(msg)
    streams = np.random.SeedSequence(seed).spawn(workers)
    shares = [trials // workers + (i < trials % workers) for i in range(workers)]

    def run(i: int) -> tuple[float, float, int]:
        return _collisions(np.random.default_rng(streams[i]), edge_size, palette, shares[i])

    parts = ordered_map(run, range(workers), workers)
    total = sum(p[0] for p in parts)
    total_sq = sum(p[1] for p in parts)
    all_collide = sum(p[2] for p in parts)
    mean = total / trials
    variance = max(total_sq / trials - mean * mean, 0.0)
    std_error = math.sqrt(variance * trials / (trials - 1) / trials) if trials > 1 else 0.0
    return CollisionStats(
        edge_size, palette, trials, seed, mean, std_error, all_collide / trials
    )


def edge_size_params(h: Hypergraph, gamma: int) -> Lemma2Params:
    """Returns parameters measured from `h`: r the smallest edge, c = ⌈largest / r⌉."""
    low, high = edge_size_range(h)
    low = max(low, 1)
    return Lemma2Params.scaled(low, max(1, math.ceil(high / low)), gamma)
