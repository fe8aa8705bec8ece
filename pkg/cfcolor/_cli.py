from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path
from typing import TYPE_CHECKING

from ._errors import (
    ExitCode,
    GraphFormatError,
    OracleLimitError,
    PreconditionError,
    ResamplingTimeout,
)
from ._graph import (
    complete,
    cycle,
    find_induced_star,
    gnp_random,
    isolated_vertices,
    line_graph_of_complete,
    path,
    random_line_graph,
    remove_isolated,
    star,
)
from ._hypergraph import max_edge_intersection_count, random_window_hypergraph
from ._io import ColoringEntry, ColoringRecord, emit_dimacs, emit_edge_list, parse_coloring, read_graph
from ._lll import DEFAULT_MAX_ROUNDS, Lemma2Params, TimeoutReport, collision_statistics, moser_tardos_cf
from ._oracle import DEFAULT_LIMIT, Neighborhood, exact_coloring
from ._pipeline import Mode, cfcn_from_cfon, cfon_color
from ._telemetry import default_seed
from ._verify import unique_witnesses, verify_cfcn, verify_cfon
from .bench import run_suite

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from ._graph import Graph

FAMILIES: dict[str, Callable[[argparse.Namespace], Graph]] = {
    "complete": lambda a: complete(a.n),
    "path": lambda a: path(a.n),
    "cycle": lambda a: cycle(a.n),
    "star": lambda a: star(a.n),
    "gnp": lambda a: gnp_random(a.n, a.p, a.seed),
    "line-gnp": lambda a: random_line_graph(a.n, a.p, a.seed),
    "line-complete": lambda a: line_graph_of_complete(a.n),
}

_RANDOM_FAMILIES = frozenset({"gnp", "line-gnp"})


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _seed(args: argparse.Namespace) -> int:
    return default_seed() if args.seed is None else args.seed


def _gen(args: argparse.Namespace) -> ExitCode:
    args.seed = _seed(args)
    g = FAMILIES[args.family](args)
    params = f"family={args.family} n={args.n}"
    if args.family in _RANDOM_FAMILIES:
        params += f" p={args.p} seed={args.seed}"
    if args.format == "dimacs":
        text = f"c {params}\n{emit_dimacs(g)}"
    else:
        text = f"# {params}\n{emit_edge_list(g)}"
    _emit(text, args.output)
    return ExitCode.OK


def _detect(args: argparse.Namespace) -> ExitCode:
    g = read_graph(args.graph)
    witness = find_induced_star(g, args.k)
    if witness is None:
        print(f"K_1,{args.k}-free")
        return ExitCode.OK
    leaves = " ".join(str(v) for v in witness.leaves)
    print(f"induced K_1,{args.k}: center={witness.center} leaves={leaves}")
    return ExitCode.PRECONDITION


def _color(args: argparse.Namespace) -> ExitCode:
    closed = args.neighborhood == "closed"
    if args.isolated_new_color and not closed:
        msg = "--isolated-new-color requires --neighborhood closed"
        raise ValueError(msg)
    seed = _seed(args)
    g = read_graph(args.graph)
    isolated = isolated_vertices(g) if args.isolated_new_color else ()
    sub, kept = remove_isolated(g) if isolated else (g, tuple(g.vertices()))

    result = cfon_color(
        sub,
        args.k,
        args.mode,
        seed,
        r_test=args.r_test,
        exact_gamma=not args.approx_gamma,
        max_rounds=args.max_rounds,
    )
    flat = result.coloring.flatten()
    pairs: list[tuple[int, int]] = [(0, 0)] * g.n
    if closed:
        fresh = len(flat.pairs) + 1
        for v in isolated:
            pairs[v] = (fresh, 1)
        for i, (color, side) in enumerate(cfcn_from_cfon(sub, flat.colors)):
            pairs[kept[i]] = (int(color), side)
    else:
        for i, pair in enumerate(result.coloring.colors):
            pairs[kept[i]] = pair
    rank = {p: i + 1 for i, p in enumerate(sorted(set(pairs)))}
    witnesses = unique_witnesses(g, pairs, closed=closed)

    layout = result.coloring.layout
    metadata = {
        "seed": str(seed),
        "k": str(args.k),
        "mode": result.mode.value,
        "neighborhood": args.neighborhood,
        "r": str(result.r),
        "layout": f"{layout.r1},{layout.r2},{layout.r3}",
        "theorem_compliant": str(result.theorem_compliant).lower(),
    }
    if result.lemma2 is not None:
        metadata["resamples"] = str(result.lemma2.resamples)
    if isolated:
        metadata["isolated"] = str(len(isolated))
    record = ColoringRecord(
        tuple(
            ColoringEntry(v, rank[pairs[v]], pairs[v][0], pairs[v][1], witnesses[v])
            for v in g.vertices()
        ),
        metadata,
    )
    _emit(record.emit(), args.output)
    return ExitCode.OK


def _check(args: argparse.Namespace) -> ExitCode:
    g = read_graph(args.graph)
    record = parse_coloring(Path(args.coloring).read_text(encoding="utf-8"))
    if record.n != g.n:
        msg = f"coloring covers {record.n} vertices but the graph has {g.n}"
        raise GraphFormatError(msg)
    verify = verify_cfcn if args.neighborhood == "closed" else verify_cfon
    violators = verify(g, record.flat_colors())
    if violators:
        print(f"invalid: {len(violators)} vertices see no unique color")
        print(" ".join(str(v) for v in violators))
        return ExitCode.INVALID_COLORING
    print(f"valid {args.neighborhood} coloring with {record.palette} colors")
    return ExitCode.OK


def _exact(args: argparse.Namespace) -> ExitCode:
    g = read_graph(args.graph)
    found = exact_coloring(g, Neighborhood(args.neighborhood), args.max_colors, limit=args.limit)
    if found is None:
        print(f"exceeds {args.max_colors}")
    else:
        print(max(found, default=1))
    return ExitCode.OK


def _lll_demo(args: argparse.Namespace) -> ExitCode:
    seed = _seed(args)
    h = random_window_hypergraph(
        args.edges, args.block, args.window, args.min_size, args.max_size, seed
    )
    r = args.min_size if args.r is None else args.r
    c = math.ceil(args.max_size / r) if args.c is None else args.c
    gamma = max_edge_intersection_count(h)
    params = Lemma2Params.scaled(r, c, gamma)
    outcome = moser_tardos_cf(h, params, seed, args.max_rounds)
    print(f"seed={seed} vertices={h.n} edges={len(h.edges)} gamma={gamma}")
    print(
        f"r={params.r} c={params.c} palette={params.palette} "
        f"theorem_compliant={str(params.theorem_compliant).lower()}"
    )
    if isinstance(outcome, TimeoutReport):
        print(f"status=timeout resamples={outcome.resamples} bad_edges={outcome.bad_edges}")
        return ExitCode.RESAMPLING_TIMEOUT
    head = " ".join(str(i) for i in outcome.transcript[:20])
    if len(outcome.transcript) > 20:
        head += " ..."
    print(f"status=ok resamples={outcome.resamples}")
    print(f"transcript={head or '-'}")
    return ExitCode.OK


def _stats(args: argparse.Namespace) -> ExitCode:
    palette = 32 * args.edge_size if args.palette is None else args.palette
    stats = collision_statistics(
        args.edge_size, palette, args.trials, _seed(args), workers=args.workers
    )
    print(stats.format_record())
    return ExitCode.OK


def _bench(args: argparse.Namespace) -> ExitCode:
    result = run_suite(args.suite, _seed(args), args.results_dir, workers=args.workers)
    sys.stdout.write(result.format_table(timings=False))
    return ExitCode.OK


def _positive(value: str) -> int:
    number = int(value)
    if number < 1:
        msg = f"must be at least 1, got {number}"
        raise argparse.ArgumentTypeError(msg)
    return number


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cfcolor",
        description="Conflict-free colorings of K_1,k-free graphs.",
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="log stage details to stderr"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    seed_help = "random seed, CFCOLOR_SEED or 1 when omitted"

    gen = commands.add_parser("gen", help="generate a graph")
    gen.add_argument("family", choices=sorted(FAMILIES))
    gen.add_argument("--n", type=_positive, required=True, help="size parameter")
    gen.add_argument("--p", type=float, default=0.3, help="edge probability")
    gen.add_argument("--seed", type=int, help=seed_help)
    gen.add_argument("--format", choices=("edgelist", "dimacs"), default="edgelist")
    gen.add_argument("--output", "-o", help="output file, stdout when omitted")
    gen.set_defaults(handler=_gen)

    detect = commands.add_parser("detect", help="search for an induced K_1,k")
    detect.add_argument("graph")
    detect.add_argument("--k", type=int, default=3)
    detect.set_defaults(handler=_detect)

    color = commands.add_parser("color", help="compute a verified conflict-free coloring")
    color.add_argument("graph")
    color.add_argument("--k", type=int, default=3)
    color.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.TIGHT.value)
    color.add_argument("--r-test", type=_positive, help="scaled threshold replacing r")
    color.add_argument("--seed", type=int, help=seed_help)
    color.add_argument(
        "--neighborhood", choices=[n.value for n in Neighborhood], default="open"
    )
    color.add_argument(
        "--isolated-new-color",
        action="store_true",
        help="give isolated vertices one fresh color (closed neighborhoods only)",
    )
    color.add_argument(
        "--approx-gamma", action="store_true", help="bound Γ by Δ² instead of measuring it"
    )
    color.add_argument("--max-rounds", type=_positive, default=DEFAULT_MAX_ROUNDS)
    color.add_argument("--output", "-o", help="output file, stdout when omitted")
    color.set_defaults(handler=_color)

    check = commands.add_parser("check", help="verify a coloring file")
    check.add_argument("graph")
    check.add_argument("coloring")
    check.add_argument(
        "--neighborhood", choices=[n.value for n in Neighborhood], default="open"
    )
    check.set_defaults(handler=_check)

    exact = commands.add_parser("exact", help="exact conflict-free chromatic number")
    exact.add_argument("graph")
    exact.add_argument(
        "--neighborhood", choices=[n.value for n in Neighborhood], default="open"
    )
    exact.add_argument("--max-colors", type=_positive)
    exact.add_argument("--limit", type=_positive, default=DEFAULT_LIMIT)
    exact.set_defaults(handler=_exact)

    demo = commands.add_parser("lll-demo", help="resample a random window hypergraph")
    demo.add_argument("--edges", type=_positive, default=50)
    demo.add_argument("--block", type=_positive, default=10)
    demo.add_argument("--window", type=_positive, default=10)
    demo.add_argument("--min-size", type=_positive, default=64)
    demo.add_argument("--max-size", type=_positive, default=100)
    demo.add_argument("--r", type=_positive)
    demo.add_argument("--c", type=_positive)
    demo.add_argument("--seed", type=int, help=seed_help)
    demo.add_argument("--max-rounds", type=_positive, default=10**5)
    demo.set_defaults(handler=_lll_demo)

    stats = commands.add_parser("stats", help="Monte-Carlo collision statistics")
    stats.add_argument("--edge-size", type=_positive, required=True)
    stats.add_argument("--palette", type=_positive, help="32 times the edge size when omitted")
    stats.add_argument("--trials", type=_positive, default=10**5)
    stats.add_argument("--seed", type=int, help=seed_help)
    stats.add_argument("--workers", type=_positive, default=1)
    stats.set_defaults(handler=_stats)

    bench = commands.add_parser("bench", help="run an experiment suite")
    bench.add_argument("suite")
    bench.add_argument("--seed", type=int, help=seed_help)
    bench.add_argument("--results-dir", help="directory for the suite table")
    bench.add_argument("--workers", type=_positive, default=1)
    bench.set_defaults(handler=_bench)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Runs the command line interface and returns its exit code."""
    args = _parser().parse_args(argv)
    if args.verbose:
        logging.basicConfig(format="%(levelname)s %(name)s: %(message)s")
        logging.getLogger("cfcolor").setLevel(logging.DEBUG)
    try:
        return int(args.handler(args))
    except PreconditionError as e:
        print(f"cfcolor: precondition failed: {e}", file=sys.stderr)
        return ExitCode.PRECONDITION
    except ResamplingTimeout as e:
        print(f"cfcolor: {e}", file=sys.stderr)
        return ExitCode.RESAMPLING_TIMEOUT
    except (GraphFormatError, OracleLimitError, ValueError, OSError) as e:
        print(f"cfcolor: error: {e}", file=sys.stderr)
        return ExitCode.INPUT_ERROR
