import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from codeattn.attention import NodeAttention
from codeattn.errors import BadDownsample, ConfigError, FormatError, LayoutOverflow
from codeattn.spatial_map import (
    Clip,
    LayoutConfig,
    ScalarField,
    cell_centers,
    evaluate_field,
    field_csv,
    field_pgm,
    generate_attention_map,
    layout_tokens,
    read_field_csv,
    read_pgm,
    render_field,
)
from codeattn.syntax import SourceSnippet, Span, parse_source

from conftest import FIXTURES
from treebuild import chain_tree, random_tree

# Half-pixel margins put every token centre on a pixel centre.
ALIGNED = LayoutConfig(margin_x=600.5, margin_y=180.5)


def _random_attention(tree, rng):
    return NodeAttention({n.id: float(rng.exponential()) if rng.random() < 0.7 else 0.0 for n in tree.nodes})


def test_token_geometry():
    tree = parse_source("class Main {}")
    geoms = layout_tokens(tree, LayoutConfig())
    g = next(g for g in geoms if g.token.text == "Main")
    # col 6, 4 chars: 600 + (6 + 2) * 12 - 540
    assert (g.center_x, g.center_y) == (156.0, 72.0)
    assert (g.width_px, g.height_px) == (48.0, 24.0)
    assert (g.sigma_x, g.sigma_y) == (12.0, 6.0)


def test_layout_is_source_ordered():
    tree = parse_source(SourceSnippet.read(FIXTURES / "wordcount.java"))
    geoms = layout_tokens(tree, LayoutConfig())
    assert len(geoms) == len(tree.tokens)
    keys = [(g.token.span.start, g.token.owner) for g in geoms]
    assert keys == sorted(keys)


@pytest.mark.parametrize("a", [1e-6, 0.37, 1.0, 250.0])
def test_isolated_token_peak(a):
    tree = chain_tree(1)
    term = 1
    geoms = layout_tokens(tree, ALIGNED)
    na = NodeAttention({term: a})
    g = geoms[0]
    assert evaluate_field(geoms, na, g.center_x, g.center_y) == pytest.approx(a, rel=1e-6)
    field = generate_attention_map(geoms, na, ALIGNED)
    assert math.isclose(field.values.max(), a, rel_tol=1e-6)
    row, col = np.unravel_index(field.values.argmax(), field.values.shape)
    assert (col + 0.5, row + 0.5) == (g.center_x, g.center_y)


def test_unaligned_peak_is_sampled_below_attention():
    tree = chain_tree(1)
    geoms = layout_tokens(tree, LayoutConfig())
    field = generate_attention_map(geoms, NodeAttention({1: 1.0}), LayoutConfig())
    assert 0.9 < field.values.max() < 1.0


@given(st.integers(0, 2**32 - 1), st.floats(1e-3, 1e3))
def test_superposition_and_scaling(seed, c):
    rng = np.random.default_rng(seed)
    tree = random_tree(rng, max_terminals=12)
    geoms = layout_tokens(tree, LayoutConfig())
    a = _random_attention(tree, rng)
    b = _random_attention(tree, rng)
    ab = NodeAttention({k: a[k] + b[k] for k in a.values})
    fa = generate_attention_map(geoms, a, LayoutConfig(), 4).values
    fb = generate_attention_map(geoms, b, LayoutConfig(), 4).values
    fab = generate_attention_map(geoms, ab, LayoutConfig(), 4).values
    fc = generate_attention_map(geoms, a.scaled(c), LayoutConfig(), 4).values
    tiny = np.finfo(np.float64).tiny
    assert np.allclose(fab, fa + fb, rtol=1e-9, atol=tiny)
    assert np.allclose(fc, c * fa, rtol=1e-9, atol=tiny)


def test_separable_raster_matches_direct_evaluation():
    tree = parse_source(SourceSnippet.read(FIXTURES / "wordcount.java"))
    rng = np.random.default_rng(3)
    geoms = layout_tokens(tree, LayoutConfig())
    na = _random_attention(tree, rng)
    field = generate_attention_map(geoms, na, LayoutConfig(), downsample=8)
    xs = cell_centers(840, 8)
    direct = evaluate_field(geoms, na, xs[None, :], xs[:, None])
    assert np.allclose(field.values, direct, rtol=1e-12, atol=1e-15)


def test_zero_attention_gives_zero_field():
    tree = parse_source(SourceSnippet.read(FIXTURES / "oneline.java"))
    field = generate_attention_map(layout_tokens(tree, LayoutConfig()), NodeAttention({}), LayoutConfig(), 4)
    assert field.values.shape == (210, 210)
    assert not field.values.any()


@pytest.mark.parametrize("d, n", [(1, 840), (2, 420), (4, 210), (840, 1)])
def test_cell_centers(d, n):
    xs = cell_centers(840, d)
    assert xs.size == n and xs[0] == d / 2 and xs[-1] == 840 - d / 2


@pytest.mark.parametrize("d", [0, 11, -4])
def test_bad_downsample(d):
    with pytest.raises(BadDownsample):
        cell_centers(840, d)


def test_layout_overflow():
    src = "class A { int " + "x" * 200 + "; }"
    with pytest.raises(LayoutOverflow):
        layout_tokens(parse_source(src), LayoutConfig())


def test_layout_config_validation(tmp_path):
    with pytest.raises(ConfigError):
        LayoutConfig(cell_w=0)
    with pytest.raises(ConfigError):
        LayoutConfig(clip=Clip(x0=1500))
    with pytest.raises(ConfigError):
        LayoutConfig.from_dict({"cell_width": 3})
    p = tmp_path / "layout.json"
    p.write_text(json.dumps({"cell_w": 10, "clip": {"x0": 500, "y0": 100, "side": 800}}))
    cfg = LayoutConfig.load(p)
    assert cfg.cell_w == 10 and cfg.clip.side == 800
    assert LayoutConfig.from_dict(cfg.to_dict()) == cfg


def test_scalar_field_validation():
    with pytest.raises(ValueError):
        ScalarField(np.zeros(3))
    with pytest.raises(ValueError):
        ScalarField(np.array([[0.0, -1.0]]))
    with pytest.raises(ValueError):
        ScalarField(np.array([[np.nan]]))


def test_csv_and_pgm_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    field = ScalarField(rng.random((5, 7)) ** 3)
    csv_path, pgm_path = render_field(field, tmp_path / "m.map")
    assert csv_path.name == "m.map.csv" and pgm_path.name == "m.map.pgm"
    back = read_field_csv(csv_path)
    assert np.array_equal(back.values, field.values)
    assert csv_path.read_text().splitlines()[0] == "7,5"
    px = read_pgm(pgm_path)
    assert px.shape == (5, 7)
    assert px.max() == 255
    assert np.array_equal(px, np.floor(255 * field.values / field.values.max()).astype(np.uint8))


def test_pgm_header_and_zero_field():
    data = field_pgm(ScalarField(np.zeros((2, 3))))
    assert data == b"P5\n3 2\n255\n" + bytes(6)


def test_csv_golden():
    field = ScalarField(np.array([[0.0, 0.5], [1.0, 0.1]]))
    assert field_csv(field) == "2,2\n0.0,0.5\n1.0,0.1\n"


@pytest.mark.parametrize(
    "text, line",
    [("2,1\n1,x\n", 2), ("2,1\n1,2,3\n", 2), ("2\n1,2\n", 1), ("2,2\n1,2\n", None)],
)
def test_read_field_csv_errors(tmp_path, text, line):
    p = tmp_path / "bad.csv"
    p.write_text(text)
    with pytest.raises(FormatError) as ei:
        read_field_csv(p)
    assert ei.value.line == line


def _single_token_tree(text, line, col):
    from codeattn.syntax import SyntaxTree

    span = Span(line, col, line, col + len(text))
    return SyntaxTree.build(["CompilationUnit", "NameExpr"], [Span(0, 0, line, col + len(text)), span],
                            [None, 0], {1: (text, span)})


SMALL = LayoutConfig(cell_w=10, cell_h=20, margin_x=0, margin_y=0, clip=Clip(0, 0, 840))


@pytest.mark.parametrize(
    "text, col, centre, sigma",
    [("if", 4, (50.0, 10.0), (5.0, 5.0)), ("x", 0, (5.0, 10.0), (2.5, 5.0))],
)
def test_layout_formula_examples(text, col, centre, sigma):
    (g,) = layout_tokens(_single_token_tree(text, 0, col), SMALL)
    assert (g.center_x, g.center_y) == centre
    assert (g.sigma_x, g.sigma_y) == sigma
    assert g.width_px == 10 * len(text)


def test_wordcount_layout_recomputed():
    tree = parse_source(SourceSnippet.read(FIXTURES / "wordcount.java"))
    cfg = LayoutConfig()
    for g in layout_tokens(tree, cfg):
        t = g.token
        n = len(t.text)
        assert g.center_x == 600 + (t.span.start_col + n / 2) * 12 - 540
        assert g.center_y == 180 + (t.span.start_line + 0.5) * 24 - 120
        assert (g.width_px, g.sigma_x, g.sigma_y) == (12 * n, 3 * n, 6)


def test_two_tokens_closed_form():
    from codeattn.syntax import SyntaxTree

    s1, s2 = Span(0, 0, 0, 3), Span(2, 5, 2, 7)
    tree = SyntaxTree.build(["Block", "NameExpr", "NameExpr"], [Span(0, 0, 2, 7), s1, s2], [None, 0, 0],
                            {1: ("abc", s1), 2: ("de", s2)})
    na = NodeAttention({1: 0.3, 2: 0.5})
    field = generate_attention_map(layout_tokens(tree, SMALL), na, SMALL)
    for x, y in [(0, 0), (15, 10), (60, 50), (61, 52), (30, 30)]:
        want = 0.3 * math.exp(-((x + 0.5 - 15) ** 2 / (2 * 7.5**2) + (y + 0.5 - 10) ** 2 / (2 * 5**2)))
        want += 0.5 * math.exp(-((x + 0.5 - 60) ** 2 / (2 * 5**2) + (y + 0.5 - 50) ** 2 / (2 * 5**2)))
        assert math.isclose(field.values[y, x], want, rel_tol=1e-12)


def test_pgm_example():
    px = np.frombuffer(field_pgm(ScalarField(np.array([[0, 1], [0.5, 0.25]])))[11:], dtype=np.uint8)
    assert px.tolist() == [0, 255, 127, 63]


def test_wordcount_map_csv_round_trip(tmp_path):
    tree = parse_source(SourceSnippet.read(FIXTURES / "wordcount.java"))
    na = NodeAttention({n.id: 1.0 for n in tree.nodes})
    field = generate_attention_map(layout_tokens(tree, LayoutConfig()), na, LayoutConfig(), 4)
    csv_path, _ = render_field(field, tmp_path / "w.map")
    back = read_field_csv(csv_path)
    assert np.allclose(back.values, field.values, rtol=1e-6, atol=0)
