from __future__ import annotations

from pathlib import Path

import pytest

from cfcolor import (
    ColoringEntry,
    ColoringRecord,
    ExitCode,
    line_graph_of_complete,
    parse_coloring,
    path,
    read_graph,
    star,
    write_graph,
)
from cfcolor._cli import main

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def lk4(tmp_path: Path) -> Path:
    graph = tmp_path / "lk4.txt"
    write_graph(line_graph_of_complete(4), graph)
    return graph


def test_gen_path(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["gen", "path", "--n", "3"]) == ExitCode.OK
    assert capsys.readouterr().out == "# family=path n=3\n0 1\n1 2\n"


def test_gen_dimacs(tmp_path: Path) -> None:
    out = tmp_path / "k3.col"
    assert main(["gen", "complete", "--n", "3", "--format", "dimacs", "-o", str(out)]) == 0
    text = out.read_text(encoding="utf-8")
    assert text.startswith("c family=complete n=3\n")
    assert read_graph(out).m == 3


def test_gen_is_deterministic(tmp_path: Path) -> None:
    first = tmp_path / "first.txt"
    second = tmp_path / "second.txt"
    args = ["gen", "line-gnp", "--n", "8", "--p", "0.5", "--seed", "3", "-o"]
    assert main([*args, str(first)]) == 0
    assert main([*args, str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert first.read_text(encoding="utf-8").startswith("# family=line-gnp n=8 p=0.5 seed=3\n")


def test_seed_from_environment(
    monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]
) -> None:
    monkeypatch.setenv("CFCOLOR_SEED", "5")
    assert main(["gen", "gnp", "--n", "5"]) == 0
    assert capsys.readouterr().out.startswith("# family=gnp n=5 p=0.3 seed=5\n")
    assert main(["gen", "gnp", "--n", "5", "--seed", "6"]) == 0
    assert capsys.readouterr().out.startswith("# family=gnp n=5 p=0.3 seed=6\n")


def test_color_then_check(
    lk4: Path, tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    out = tmp_path / "lk4.coloring"
    assert main(["color", str(lk4), "-o", str(out)]) == ExitCode.OK
    record = parse_coloring(out.read_text(encoding="utf-8"))
    assert record.n == 6
    assert record.metadata["seed"] == "1"
    assert record.metadata["mode"] == "tight"
    assert record.metadata["neighborhood"] == "open"
    assert record.metadata["theorem_compliant"] == "true"
    assert None not in record.witnesses()

    assert main(["check", str(lk4), str(out)]) == ExitCode.OK
    assert capsys.readouterr().out == f"valid open coloring with {record.palette} colors\n"


def test_color_is_byte_identical(lk4: Path, tmp_path: Path) -> None:
    first = tmp_path / "first.coloring"
    second = tmp_path / "second.coloring"
    assert main(["color", str(lk4), "--seed", "4", "-o", str(first)]) == 0
    assert main(["color", str(lk4), "--seed", "4", "-o", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_color_matches_golden_file(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    graph = GOLDEN / "lk5.txt"
    assert main(["gen", "line-complete", "--n", "5"]) == ExitCode.OK
    assert capsys.readouterr().out == graph.read_text(encoding="utf-8")
    out = tmp_path / "lk5.coloring"
    args = ["color", str(graph), "--k", "3", "--mode", "tight", "--seed", "1", "-o", str(out)]
    assert main(args) == ExitCode.OK
    assert out.read_bytes() == (GOLDEN / "lk5_seed1.coloring").read_bytes()
    assert main(["check", str(graph), str(out)]) == ExitCode.OK


def test_color_one_based_edge_list(tmp_path: Path) -> None:
    graph = tmp_path / "triangle.txt"
    graph.write_text("1 2\n2 3\n3 1\n", encoding="utf-8")
    out = tmp_path / "triangle.coloring"
    assert main(["color", str(graph), "-o", str(out)]) == ExitCode.OK
    record = parse_coloring(out.read_text(encoding="utf-8"))
    assert record.n == 3
    assert None not in record.witnesses()
    assert main(["check", str(graph), str(out)]) == ExitCode.OK


def test_check_rejects_monochrome(
    lk4: Path, tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    bad = tmp_path / "bad.coloring"
    record = ColoringRecord(tuple(ColoringEntry(v, 1, 1, 1, None) for v in range(6)))
    bad.write_text(record.emit(), encoding="utf-8")
    assert main(["check", str(lk4), str(bad)]) == ExitCode.INVALID_COLORING
    assert capsys.readouterr().out == "invalid: 6 vertices see no unique color\n0 1 2 3 4 5\n"


def test_check_size_mismatch(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    graph = tmp_path / "p3.txt"
    write_graph(path(3), graph)
    coloring = tmp_path / "short.coloring"
    record = ColoringRecord((ColoringEntry(0, 1, 1, 1, None),))
    coloring.write_text(record.emit(), encoding="utf-8")
    assert main(["check", str(graph), str(coloring)]) == ExitCode.INPUT_ERROR
    assert "coloring covers 1 vertices" in capsys.readouterr().err


def test_color_closed(lk4: Path, tmp_path: Path) -> None:
    out = tmp_path / "closed.coloring"
    assert main(["color", str(lk4), "--neighborhood", "closed", "-o", str(out)]) == 0
    assert parse_coloring(out.read_text(encoding="utf-8")).metadata["neighborhood"] == "closed"
    assert main(["check", str(lk4), str(out), "--neighborhood", "closed"]) == 0


def test_color_isolated_new_color(tmp_path: Path) -> None:
    graph = tmp_path / "p3-plus-one.txt"
    graph.write_text("0 1\n1 2\n3\n", encoding="utf-8")
    out = tmp_path / "closed.coloring"
    args = ["color", str(graph), "--neighborhood", "closed", "--isolated-new-color"]
    assert main([*args, "-o", str(out)]) == 0
    record = parse_coloring(out.read_text(encoding="utf-8"))
    assert record.metadata["isolated"] == "1"
    assert record.flat_colors()[3] not in record.flat_colors()[:3]
    assert main(["check", str(graph), str(out), "--neighborhood", "closed"]) == 0


def test_isolated_new_color_requires_closed(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    graph = tmp_path / "p3.txt"
    write_graph(path(3), graph)
    assert main(["color", str(graph), "--isolated-new-color"]) == ExitCode.INPUT_ERROR
    assert "--neighborhood closed" in capsys.readouterr().err


def test_color_isolated_vertex_is_precondition(tmp_path: Path) -> None:
    graph = tmp_path / "p3-plus-one.txt"
    graph.write_text("0 1\n1 2\n3\n", encoding="utf-8")
    assert main(["color", str(graph)]) == ExitCode.PRECONDITION


def test_color_rejects_claw(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    graph = tmp_path / "claw.txt"
    write_graph(star(3), graph)
    assert main(["color", str(graph)]) == ExitCode.PRECONDITION
    assert "precondition failed: K_1,3-free" in capsys.readouterr().err


def test_color_scaled_threshold(lk4: Path, tmp_path: Path) -> None:
    out = tmp_path / "scaled.coloring"
    assert main(["color", str(lk4), "--r-test", "1", "-o", str(out)]) == 0
    record = parse_coloring(out.read_text(encoding="utf-8"))
    assert record.metadata["r"] == "1"
    assert record.metadata["theorem_compliant"] == "false"
    assert main(["check", str(lk4), str(out)]) == 0


def test_detect(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    claw = tmp_path / "claw.txt"
    write_graph(star(3), claw)
    assert main(["detect", str(claw)]) == ExitCode.PRECONDITION
    assert capsys.readouterr().out == "induced K_1,3: center=0 leaves=1 2 3\n"
    assert main(["detect", str(claw), "--k", "4"]) == ExitCode.OK
    assert capsys.readouterr().out == "K_1,4-free\n"


def test_exact(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    graph = tmp_path / "p3.txt"
    write_graph(path(3), graph)
    assert main(["exact", str(graph)]) == 0
    assert capsys.readouterr().out == "2\n"
    triangle = tmp_path / "k3.txt"
    triangle.write_text("0 1\n1 2\n0 2\n", encoding="utf-8")
    assert main(["exact", str(triangle), "--max-colors", "2"]) == 0
    assert capsys.readouterr().out == "exceeds 2\n"
    assert main(["exact", str(triangle), "--neighborhood", "closed"]) == 0
    assert capsys.readouterr().out == "2\n"


def test_exact_limit(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    graph = tmp_path / "p13.txt"
    write_graph(path(13), graph)
    assert main(["exact", str(graph)]) == ExitCode.INPUT_ERROR
    assert "oracle limit" in capsys.readouterr().err


@pytest.mark.parametrize(
    ("text", "message"),
    [
        pytest.param("0 1 2\n", "line 1", id="too-many-tokens"),
        pytest.param("0 1\n1 1\n", "line 2", id="self-loop"),
    ],
)
def test_malformed_graph(
    tmp_path: Path, capsys: pytest.CaptureFixture[str], text: str, message: str
) -> None:
    graph = tmp_path / "bad.txt"
    graph.write_text(text, encoding="utf-8")
    assert main(["color", str(graph)]) == ExitCode.INPUT_ERROR
    assert message in capsys.readouterr().err


def test_missing_file(tmp_path: Path) -> None:
    assert main(["detect", str(tmp_path / "missing.txt")]) == ExitCode.INPUT_ERROR


def test_lll_demo(capsys: pytest.CaptureFixture[str]) -> None:
    args = ["lll-demo", "--edges", "5", "--window", "5", "--min-size", "4", "--max-size", "8", "--seed", "1"]
    assert main(args) == ExitCode.OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("seed=1 vertices=50 edges=5 gamma=")
    assert lines[1] == "r=4 c=2 palette=256 theorem_compliant=false"
    assert lines[2].startswith("status=ok resamples=")
    assert lines[3].startswith("transcript=")


def test_stats(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["stats", "--edge-size", "4", "--trials", "100", "--seed", "2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("edge_size=4 palette=128 trials=100 seed=2 mean_x_e=")


def test_bench_unknown_suite(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["bench", "nope"]) == ExitCode.INPUT_ERROR
    assert "unknown suite" in capsys.readouterr().err


def test_bench_stdout_is_byte_identical(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    args = ["bench", "resample", "--seed", "1", "--results-dir", str(tmp_path)]
    assert main(args) == ExitCode.OK
    first = capsys.readouterr().out
    assert main(args) == ExitCode.OK
    assert capsys.readouterr().out == first
    assert first.startswith("# suite=resample seed=1\ninstance\tedges\tgamma\t")
    assert "wall_ms" not in first
    assert "wall_ms" in (tmp_path / "resample.tsv").read_text(encoding="utf-8")


def test_exit_codes_are_closed() -> None:
    assert ExitCode(3) is ExitCode.PRECONDITION
    with pytest.raises(ValueError, match="99"):
        ExitCode(99)


def test_argument_errors() -> None:
    with pytest.raises(SystemExit) as exc_info:
        main(["gen", "path", "--n", "0"])
    assert exc_info.value.code == 2
