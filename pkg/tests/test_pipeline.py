from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cfcolor import (
    DEFAULT_SEED,
    CfonResult,
    Graph,
    IsolatedVertexError,
    Mode,
    NotClawFreeError,
    PaletteLayout,
    cfcn_from_cfon,
    cfon_color,
    complete,
    gnp_random,
    line_graph,
    line_graph_of_complete,
    path,
    remove_isolated,
    star,
    theorem_color_bound,
    verify_cfcn,
    verify_cfon,
)
from cfcolor._pipeline import log_palette_ratio, theorem_palette_ceiling

from ._util import claw_free_graphs


def assert_layout(result: CfonResult) -> None:
    layout = result.coloring.layout
    for v, (first, second) in enumerate(result.coloring.colors):
        if v in result.partition.v1:
            assert first == 1
            assert second in layout.n1
        elif v in result.partition.v2:
            assert first in layout.n2
            assert second in layout.n3
        else:
            assert v in result.partition.v3
            assert first == 1
            assert second in layout.n3


def test_theorem_color_bound() -> None:
    assert theorem_color_bound(3, 4096) == 794630
    layout = PaletteLayout.for_theorem(3, 4096)
    assert layout.r1 + layout.r2 * layout.r3 + layout.r3 == theorem_color_bound(3, 4096)
    assert layout.capacity == theorem_color_bound(3, 4096)


def test_layout_ranges() -> None:
    layout = PaletteLayout(2, 3, 4)
    assert layout.n1 == range(1, 3)
    assert layout.n2 == range(3, 6)
    assert layout.n3 == range(6, 10)
    assert layout.capacity == 2 + 12 + 4


@pytest.mark.parametrize("n", [4, 5, 6])
def test_line_graph_of_complete(n: int) -> None:
    g = line_graph_of_complete(n)
    result = cfon_color(g)
    assert verify_cfon(g, result.coloring.colors) == []
    assert result.certificate.check(g, result.coloring.colors) == []
    assert result.lemma2 is None
    assert result.theorem_compliant
    assert result.r == 4096
    assert result.seed == DEFAULT_SEED
    assert result.total_colors <= result.coloring.layout.capacity
    assert_layout(result)


def test_single_edge() -> None:
    result = cfon_color(complete(2))
    assert verify_cfon(complete(2), result.coloring.colors) == []
    assert result.total_colors == 2


def test_rejects_claw() -> None:
    with pytest.raises(NotClawFreeError) as exc_info:
        cfon_color(star(3))
    assert exc_info.value.witness.center == 0
    assert exc_info.value.witness.leaves == (1, 2, 3)
    assert exc_info.value.condition == "K_1,3-free"


def test_claw_allowed_for_larger_k() -> None:
    g = star(3)
    result = cfon_color(g, k=4)
    assert verify_cfon(g, result.coloring.colors) == []


def test_rejects_isolated() -> None:
    with pytest.raises(IsolatedVertexError) as exc_info:
        cfon_color(Graph(3, [(0, 1)]))
    assert exc_info.value.vertices == (2,)


@pytest.mark.parametrize(
    ("kwargs", "match"),
    [
        pytest.param({"k": 2}, "k must", id="k"),
        pytest.param({"r_test": 0}, "r_test must", id="r_test"),
        pytest.param({"mode": "loose"}, "loose", id="mode"),
    ],
)
def test_invalid_arguments(kwargs: dict, match: str) -> None:
    with pytest.raises(ValueError, match=match):
        cfon_color(path(3), **kwargs)


@pytest.mark.parametrize("seed", range(250))
@pytest.mark.parametrize("p", [0.2, 0.5])
def test_random_line_graphs(seed: int, p: float) -> None:
    base = gnp_random(5 + seed % 16, p, seed)
    if base.m == 0:
        return
    g, _ = remove_isolated(line_graph(base))
    if g.n == 0:
        return
    result = cfon_color(g, seed=seed)
    assert verify_cfon(g, result.coloring.colors) == []
    assert result.certificate.check(g, result.coloring.colors) == []
    assert_layout(result)
    flat = result.coloring.flatten()
    closed = cfcn_from_cfon(g, flat.colors)
    assert verify_cfcn(g, closed) == []
    assert len(set(closed)) <= 2 * len(flat.pairs)


def test_theorem_mode() -> None:
    g = line_graph_of_complete(5)
    theorem = cfon_color(g, mode=Mode.THEOREM)
    tight = cfon_color(g, mode="tight")
    assert theorem.mode is Mode.THEOREM
    assert theorem.coloring.layout == PaletteLayout.for_theorem(3, 4096)
    assert verify_cfon(g, theorem.coloring.colors) == []
    assert theorem.total_colors <= theorem_color_bound(3, 4096)
    assert tight.coloring.layout.capacity <= theorem.coloring.layout.capacity
    assert_layout(theorem)


def test_scaled_r_reaches_resampling() -> None:
    g = line_graph_of_complete(5)
    result = cfon_color(g, seed=7, r_test=1)
    assert result.partition.v3
    assert result.lemma2 is not None
    assert not result.theorem_compliant
    assert verify_cfon(g, result.coloring.colors) == []
    assert_layout(result)
    assert result == cfon_color(g, seed=7, r_test=1)


def test_scaled_r_theorem_mode() -> None:
    g = line_graph_of_complete(5)
    result = cfon_color(g, mode=Mode.THEOREM, seed=3, r_test=1)
    assert result.lemma2 is not None
    assert result.coloring.layout == PaletteLayout.for_theorem(3, 1)
    assert verify_cfon(g, result.coloring.colors) == []
    assert result.total_colors <= theorem_color_bound(3, 1)


def test_seed_from_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("CFCOLOR_SEED", "9")
    assert cfon_color(complete(3)).seed == 9
    assert cfon_color(complete(3), seed=4).seed == 4


def test_flatten() -> None:
    g = line_graph_of_complete(4)
    result = cfon_color(g)
    flat = result.coloring.flatten()
    assert len(flat.pairs) == result.total_colors
    assert sorted(set(flat.colors)) == list(range(1, len(flat.pairs) + 1))
    assert list(flat.pairs) == sorted(flat.pairs)
    assert [flat.pairs[c - 1] for c in flat.colors] == list(result.coloring.colors)
    assert verify_cfon(g, flat.colors) == []


def test_certificate_rejects_other_colors() -> None:
    g = line_graph_of_complete(4)
    result = cfon_color(g)
    monochrome = ((1, 1),) * g.n
    assert result.certificate.check(g, monochrome) == list(g.vertices())


@given(claw_free_graphs())
@settings(max_examples=100, deadline=None)
def test_claw_free_graphs(g: Graph) -> None:
    result = cfon_color(g)
    assert verify_cfon(g, result.coloring.colors) == []
    assert result.total_colors <= result.coloring.layout.capacity


@given(claw_free_graphs())
@settings(max_examples=50, deadline=None)
def test_tight_palette_within_theorem(g: Graph) -> None:
    tight = cfon_color(g)
    theorem = cfon_color(g, mode=Mode.THEOREM)
    assert tight.coloring.layout.capacity <= theorem.coloring.layout.capacity
    assert tight.total_colors <= theorem.total_colors


@given(claw_free_graphs(), st.integers(1, 3))
@settings(max_examples=50, deadline=None)
def test_v2_pairs_refine_f2(g: Graph, r_test: int) -> None:
    result = cfon_color(g, seed=1, r_test=r_test)
    layout = result.coloring.layout
    colors = result.coloring.colors
    v2 = result.partition.v2
    f2_of_pair: dict[tuple[int, int], int] = {}
    for v in v2:
        f2 = colors[v][0] - layout.r1
        assert 1 <= f2 <= layout.r2
        assert f2_of_pair.setdefault(colors[v], f2) == f2
    for v in result.partition.v3:
        seen = Counter(colors[u][0] for u in g.neighbors(v) if u in v2)
        assert 1 in seen.values()
    if not result.partition.v3:
        assert {colors[v][0] for v in v2} == {layout.r1 + 1}


def test_cfcn_from_cfon() -> None:
    g = path(4)
    closed = cfcn_from_cfon(g, [1, 1, 2, 2])
    assert verify_cfcn(g, closed) == []
    assert [color for color, _ in closed] == [1, 1, 2, 2]
    assert {side for _, side in closed} <= {1, 2}
    with pytest.raises(ValueError, match="not a CFON coloring"):
        cfcn_from_cfon(g, [1, 1, 1, 1])


def test_palette_helpers() -> None:
    assert theorem_palette_ceiling(3, 100) == 794630
    assert log_palette_ratio(1, 3, 10) == pytest.approx(10 / 1.0986122886681098)
    with pytest.raises(ValueError, match="delta"):
        log_palette_ratio(3, 1, 10)
