from __future__ import annotations

import time
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, final

from .._concurrency import ordered_map
from .._errors import BoundViolationError
from .._graph import line_graph_of_complete, max_degree
from .._hypergraph import max_edge_intersection_count, random_window_hypergraph
from .._lll import Lemma2Params, TimeoutReport, moser_tardos_cf
from .._oracle import DEFAULT_LIMIT, connected_graphs, exact_cfon_number, sweep_inequality
from .._pipeline import Mode, cfon_color, log_palette_ratio, theorem_palette_ceiling
from .._telemetry import get_tracer, logger
from .._verify import verify_cf_hypergraph, verify_cfon

if TYPE_CHECKING:
    from collections.abc import Callable

    from opentelemetry.metrics import MeterProvider
    from opentelemetry.trace import TracerProvider

Row = tuple[str, ...]


@final
@dataclass(frozen=True, slots=True)
class SuiteResult:
    """The table one suite produced, rows in instance order.

    The `wall_ms` column is informational and differs between runs, so it is
    left out of stdout and kept only in the results file.
    """

    name: str
    seed: int
    header: Row
    rows: tuple[Row, ...]

    def format_table(self, *, timings: bool = True) -> str:
        """Formats the table as TSV under a `# suite=<name> seed=<seed>` line.

        Args:
            timings: Whether to include the `wall_ms` column. Without it the
                output is byte-identical across runs with the same seed.
        """
        keep = [i for i, name in enumerate(self.header) if timings or name != "wall_ms"]
        lines = [f"# suite={self.name} seed={self.seed}"]
        lines.extend("\t".join(row[i] for i in keep) for row in (self.header, *self.rows))
        return "".join(f"{line}\n" for line in lines)

    def column(self, name: str) -> list[str]:
        """Returns the values of one column."""
        i = self.header.index(name)
        return [row[i] for row in self.rows]


@final
@dataclass(frozen=True, slots=True)
class _Context:
    seed: int
    tracer_provider: TracerProvider | None
    meter_provider: MeterProvider | None


def _millis(start: float) -> str:
    return f"{(time.perf_counter() - start) * 1000:.1f}"


LKN_SIZES = range(4, 9)


def _lkn_row(n: int, ctx: _Context) -> Row:
    start = time.perf_counter()
    g = line_graph_of_complete(n)
    result = cfon_color(
        g,
        3,
        Mode.TIGHT,
        ctx.seed,
        tracer_provider=ctx.tracer_provider,
        meter_provider=ctx.meter_provider,
    )
    if bad := verify_cfon(g, result.coloring.colors):
        msg = f"L(K_{n}) coloring fails at {bad[:5]}"
        raise BoundViolationError(msg)
    exact = exact_cfon_number(g) if g.n <= DEFAULT_LIMIT else None
    delta = max_degree(g)
    return (
        f"L(K_{n})",
        str(g.n),
        str(delta),
        str(result.total_colors),
        "-" if exact is None else str(exact),
        str(theorem_palette_ceiling(3, delta)),
        f"{log_palette_ratio(3, delta, result.total_colors):.3f}",
        _millis(start),
    )


def _lkn(ctx: _Context, workers: int) -> tuple[Row, list[Row]]:
    header = ("instance", "n", "delta", "palette", "exact", "theorem_bound", "per_k2_ln_delta", "wall_ms")
    return header, ordered_map(lambda n: _lkn_row(n, ctx), LKN_SIZES, workers)


def _inequality(ctx: _Context, workers: int) -> tuple[Row, list[Row]]:
    del ctx
    start = time.perf_counter()
    report = sweep_inequality(connected_graphs(6), workers=workers)
    wall = _millis(start)
    header = ("instance", "n", "m", "cfon", "cfcn", "ratio", "wall_ms")
    rows = [
        (row.graph_id, str(row.n), str(row.m), str(row.cfon), str(row.cfcn), f"{row.ratio:.3f}", wall)
        for row in report.rows
    ]
    return header, rows


RESAMPLE_SIZES = (16, 32, 64)
RESAMPLE_EDGES = 50
RESAMPLE_BLOCK = 10
RESAMPLE_WINDOW = 10


def _resample_row(r: int, ctx: _Context) -> Row:
    start = time.perf_counter()
    upper = min(2 * r, RESAMPLE_BLOCK * RESAMPLE_WINDOW)
    h = random_window_hypergraph(
        RESAMPLE_EDGES, RESAMPLE_BLOCK, RESAMPLE_WINDOW, r, upper, ctx.seed
    )
    gamma = max_edge_intersection_count(h)
    params = Lemma2Params.scaled(r, 2, gamma)
    outcome = moser_tardos_cf(
        h,
        params,
        ctx.seed,
        10**5,
        tracer_provider=ctx.tracer_provider,
        meter_provider=ctx.meter_provider,
    )
    if isinstance(outcome, TimeoutReport):
        resamples, status = outcome.resamples, "timeout"
    else:
        if bad := verify_cf_hypergraph(h, [outcome.coloring.colors[v] for v in range(h.n)]):
            msg = f"resampling returned bad edges {bad[:5]}"
            raise BoundViolationError(msg)
        resamples, status = outcome.resamples, "ok"
    return (
        f"window-r{r}",
        str(len(h.edges)),
        str(gamma),
        str(params.palette),
        str(resamples),
        status,
        _millis(start),
    )


def _resample(ctx: _Context, workers: int) -> tuple[Row, list[Row]]:
    header = ("instance", "edges", "gamma", "palette", "resamples", "status", "wall_ms")
    return header, ordered_map(lambda r: _resample_row(r, ctx), RESAMPLE_SIZES, workers)


SUITES: dict[str, Callable[[_Context, int], tuple[Row, list[Row]]]] = {
    "lkn": _lkn,
    "inequality": _inequality,
    "resample": _resample,
}
"""The known suites by name."""


def run_suite(
    name: str,
    seed: int,
    results_dir: str | Path | None = None,
    *,
    workers: int = 1,
    tracer_provider: TracerProvider | None = None,
    meter_provider: MeterProvider | None = None,
) -> SuiteResult:
    """Runs one experiment suite and optionally writes its table.

    - `lkn`: CFON palettes on L(K_4)..L(K_8) with exact values where the oracle
      reaches.
    - `inequality`: exact CFON and CFCN numbers for every connected graph on
      up to 6 vertices.
    - `resample`: resample counts on window hypergraphs at scaled sizes.

    Args:
        name: The suite name.
        seed: The seed for every randomized step.
        results_dir: Directory receiving `<name>.tsv`, created if missing.
        workers: Rows computed concurrently.
        tracer_provider: The tracer provider to use, the global one when omitted.
        meter_provider: The meter provider to use, the global one when omitted.

    Raises:
        ValueError: If the suite name is unknown.
    """
    suite = SUITES.get(name)
    if suite is None:
        msg = f"unknown suite {name!r}, expected one of {sorted(SUITES)}"
        raise ValueError(msg)
    ctx = _Context(seed, tracer_provider, meter_provider)
    with get_tracer(tracer_provider).start_as_current_span("run_suite") as span:
        span.set_attribute("cfcolor.suite", name)
        span.set_attribute("cfcolor.seed", seed)
        header, rows = suite(ctx, workers)
        span.set_attribute("cfcolor.suite.rows", len(rows))
    result = SuiteResult(name, seed, header, tuple(rows))
    if results_dir is not None:
        directory = Path(results_dir)
        directory.mkdir(parents=True, exist_ok=True)
        (directory / f"{name}.tsv").write_text(result.format_table(), encoding="utf-8")
        logger.debug("Wrote %d rows to %s", len(rows), directory / f"{name}.tsv")
    return result
