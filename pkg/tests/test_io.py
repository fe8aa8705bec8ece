from __future__ import annotations

from typing import TYPE_CHECKING

import pytest
from hypothesis import given

from cfcolor import (
    ColoringEntry,
    ColoringRecord,
    Graph,
    GraphFormatError,
    emit_dimacs,
    emit_edge_list,
    isolated_vertices,
    parse_coloring,
    parse_dimacs,
    parse_edge_list,
    path,
    read_graph,
    write_graph,
)

from ._util import graphs

if TYPE_CHECKING:
    from pathlib import Path


def test_edge_list_indices() -> None:
    assert parse_edge_list("0 1\n1 2\n") == path(3)


def test_edge_list_comments_and_blank_lines() -> None:
    assert parse_edge_list("# a path\n\n0 1\n  # indented\n1 2\n") == path(3)


def test_edge_list_isolated_vertices() -> None:
    g = parse_edge_list("0 1\n2\n3\n")
    assert g.n == 4
    assert g.labels is None
    assert isolated_vertices(g) == (2, 3)
    assert parse_edge_list(emit_edge_list(g)) == g


def test_edge_list_one_based() -> None:
    g = parse_edge_list("1 2\n2 3\n3 1\n")
    assert g.n == 3
    assert g.labels == ("1", "2", "3")
    assert isolated_vertices(g) == ()
    assert sorted(g.edges()) == [(0, 1), (0, 2), (1, 2)]


def test_edge_list_sparse_numbers_stay_dense() -> None:
    g = parse_edge_list("0 3000000\n")
    assert g.n == 2
    assert g.labels == ("0", "3000000")
    assert parse_edge_list(emit_edge_list(g)) == g


def test_emit_edge_list_declares_skipped_vertices() -> None:
    g = Graph(5, [(0, 3), (1, 4)])
    assert emit_edge_list(g) == "0\n1\n2\n0 3\n1 4\n"
    assert parse_edge_list(emit_edge_list(g)) == g
    assert emit_edge_list(path(3)) == "0 1\n1 2\n"


@given(graphs())
def test_edge_list_round_trip(g: Graph) -> None:
    assert parse_edge_list(emit_edge_list(g)) == g


def test_edge_list_labels() -> None:
    g = parse_edge_list("a b\nb c\nd\n")
    assert g.n == 4
    assert g.labels == ("a", "b", "c", "d")
    assert list(g.edges()) == [(0, 1), (1, 2)]
    assert parse_edge_list(emit_edge_list(g)) == g


def test_edge_list_mixed_tokens_become_labels() -> None:
    g = parse_edge_list("10 x\n")
    assert g.n == 2
    assert g.labels == ("10", "x")


@pytest.mark.parametrize(
    ("text", "line"),
    [
        pytest.param("0 1 2\n", 1, id="too-many-tokens"),
        pytest.param("0 1\n2 2\n", 2, id="self-loop"),
        pytest.param("0 1\n1 0\n", 2, id="repeated"),
        pytest.param("a b\nb a\n", 2, id="repeated-labels"),
    ],
)
def test_edge_list_errors(text: str, line: int) -> None:
    with pytest.raises(GraphFormatError) as exc_info:
        parse_edge_list(text)
    assert exc_info.value.line == line
    assert str(exc_info.value).startswith(f"line {line}: ")


def test_dimacs() -> None:
    text = "c a path\np edge 3 2\ne 1 2\ne 2 3\n"
    assert parse_dimacs(text) == path(3)
    assert parse_dimacs(emit_dimacs(path(3))) == path(3)
    assert emit_dimacs(Graph(2)) == "p edge 2 0\n"


@pytest.mark.parametrize(
    ("text", "message"),
    [
        pytest.param("e 1 2\n", "before problem line", id="edge-first"),
        pytest.param("p edge 3 2\ne 1 2\n", "declares 2 edges", id="count"),
        pytest.param("p edge 2 1\ne 1 3\n", "out of range", id="range"),
        pytest.param("p edge 2 1\ne 1 1\n", "self-loop", id="self-loop"),
        pytest.param("p edge 2 0\np edge 2 0\n", "repeated problem", id="two-headers"),
        pytest.param("p edge 2 0\nx\n", "unknown line type", id="unknown"),
        pytest.param("c only comments\n", "missing problem line", id="no-header"),
        pytest.param("p edge two 0\n", "expected an integer", id="not-integer"),
    ],
)
def test_dimacs_errors(text: str, message: str) -> None:
    with pytest.raises(GraphFormatError, match=message):
        parse_dimacs(text)


def test_read_graph_detects_format(tmp_path: Path) -> None:
    g = Graph(5, [(0, 1), (1, 2), (3, 4)])
    write_graph(g, tmp_path / "g.col", dimacs=True)
    write_graph(g, tmp_path / "g.txt")
    assert (tmp_path / "g.col").read_text().startswith("p edge 5 3")
    assert read_graph(tmp_path / "g.col") == g
    assert read_graph(tmp_path / "g.txt") == g


def test_coloring_record() -> None:
    record = ColoringRecord(
        (
            ColoringEntry(0, 1, 1, 1, 1),
            ColoringEntry(1, 2, 1, 2, 0),
            ColoringEntry(2, 1, 1, 1, None),
        ),
        {"seed": "1"},
    )
    text = record.emit()
    assert text == (
        "cfcolor v1 3 2\n# seed=1\nv 0 1 1 1 1\nv 1 2 1 2 0\nv 2 1 1 1 -\n"
    )
    parsed = parse_coloring(text)
    assert parsed == record
    assert parsed.flat_colors() == [1, 2, 1]
    assert parsed.pair_colors() == [(1, 1), (1, 2), (1, 1)]
    assert parsed.witnesses() == [1, 0, None]


def test_coloring_vertex_order_is_free() -> None:
    parsed = parse_coloring("cfcolor v1 2 2\nv 1 2 1 2 0\nv 0 1 1 1 1\n")
    assert parsed.flat_colors() == [1, 2]


@pytest.mark.parametrize(
    ("text", "message"),
    [
        pytest.param("", "empty", id="empty"),
        pytest.param("cfcolor v2 1 1\nv 0 1 1 1 -\n", "header", id="version"),
        pytest.param("cfcolor v1 2 1\nv 0 1 1 1 -\n", "declares 2", id="missing-vertex"),
        pytest.param("cfcolor v1 1 1\nv 0 1 1 1 -\nv 0 1 1 1 -\n", "twice", id="twice"),
        pytest.param("cfcolor v1 1 1\nv 1 1 1 1 -\n", "out of range", id="range"),
        pytest.param("cfcolor v1 1 1\nv 0 1 1\n", "expected 'v", id="short"),
    ],
)
def test_coloring_errors(text: str, message: str) -> None:
    with pytest.raises(GraphFormatError, match=message):
        parse_coloring(text)
