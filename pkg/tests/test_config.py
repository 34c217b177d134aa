import json

import pytest

from codeattn.config import RunConfig, parse_t_range
from codeattn.errors import ConfigError
from codeattn.pathctx import ExtractionLimits


def test_defaults():
    cfg = RunConfig()
    assert cfg.limits == ExtractionLimits(8, 2, 200)
    assert cfg.layout.clip.side == 840
    assert cfg.attention_source == "uniform"


def test_load_resolves_paths_against_config_dir(tmp_path):
    (tmp_path / "a.tsv").write_text("k\t1\n")
    p = tmp_path / "run.json"
    p.write_text(json.dumps({"attention": "a.tsv", "downsample": 4, "limits": {"max_contexts": 50},
                             "t_range": "1:2", "output_dir": "out"}))
    cfg = RunConfig.load(p)
    assert cfg.attention_source == str(tmp_path / "a.tsv")
    assert cfg.output_dir == str(tmp_path / "out")
    assert cfg.limits.max_contexts == 50 and cfg.downsample == 4 and cfg.t_range == (1.0, 2.0)


@pytest.mark.parametrize(
    "doc",
    [{"downsample": 11}, {"downsample": 0}, {"bogus": 1}, {"limits": {"max_width": 0}},
     {"layout": {"cell_w": -1}}, {"t_range": "3:1"}],
)
def test_bad_configs(tmp_path, doc):
    p = tmp_path / "run.json"
    p.write_text(json.dumps(doc))
    with pytest.raises(ConfigError):
        RunConfig.load(p)


def test_missing_and_malformed(tmp_path):
    with pytest.raises(ConfigError):
        RunConfig.load(tmp_path / "nope.json")
    (tmp_path / "x.json").write_text("[1, 2]")
    with pytest.raises(ConfigError):
        RunConfig.load(tmp_path / "x.json")


def test_digest_tracks_attention_content(tmp_path):
    a = tmp_path / "a.tsv"
    a.write_text("k\t1\n")
    cfg = RunConfig(attention_source=str(a))
    d1 = cfg.digest()
    assert d1 == RunConfig(attention_source=str(a)).digest()
    a.write_text("k\t2\n")
    assert cfg.digest() != d1
    assert RunConfig().digest() != RunConfig(downsample=2).digest()
    assert set(cfg.provenance()) == {"tool_version", "config_digest"}


def test_overrides():
    cfg = RunConfig().with_overrides(downsample=4, output_dir=None)
    assert cfg.downsample == 4 and cfg.output_dir == "out"
    with pytest.raises(ConfigError):
        RunConfig().with_overrides(downsample=7 * 11)


@pytest.mark.parametrize("v, want", [("0:1.5", (0.0, 1.5)), ([2, 3], (2.0, 3.0)), ("1,2", (1.0, 2.0))])
def test_parse_t_range(v, want):
    assert parse_t_range(v) == want


@pytest.mark.parametrize("v", ["1", "a:b", "2:1", None])
def test_parse_t_range_bad(v):
    with pytest.raises(ConfigError):
        parse_t_range(v)


def test_shipped_default_config_loads():
    from pathlib import Path

    cfg = RunConfig.load(Path(__file__).resolve().parents[1] / "configs" / "default.json")
    assert cfg.layout == RunConfig().layout and cfg.limits == RunConfig().limits
    assert cfg.downsample == 4
