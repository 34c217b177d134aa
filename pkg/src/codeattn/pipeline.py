"""End-to-end steps shared by the CLI and the experiment scripts."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from codeattn import attention as attn
from codeattn._io import atomic_write_text
from codeattn.config import UNIFORM, RunConfig
from codeattn.gaze import gaze_histogram, load_gaze
from codeattn.pathctx import PathContext, extract_path_contexts
from codeattn.rocauc import EvalReport, evaluate, roc_csv
from codeattn.spatial_map import (
    ScalarField,
    generate_attention_map,
    layout_tokens,
    read_field_csv,
    render_field,
    unplaced_mass,
)
from codeattn.errors import ConfigError
from codeattn.syntax import SourceSnippet, SyntaxTree, parse_source


@dataclass
class MapResult:
    tree: SyntaxTree
    contexts: list[PathContext]
    node_attention: attn.NodeAttention
    field: ScalarField
    diagnostics: dict


def build_map(snippet: SourceSnippet, cfg: RunConfig, attentions=None) -> MapResult:
    """Run one snippet from source text to a rasterized attention map.

    ``attentions`` overrides ``cfg.attention_source`` when given.
    """
    tree = parse_source(snippet)
    contexts = extract_path_contexts(tree, cfg.limits)
    if attentions is None:
        if cfg.attention_source == UNIFORM:
            attentions = attn.uniform_attention(tree, contexts) if contexts else []
        else:
            attentions = attn.load_attention(cfg.attention_source)
    node_attn = attn.aggregate_node_attention(tree, contexts, attentions)
    geoms = layout_tokens(tree, cfg.layout)
    field = generate_attention_map(geoms, node_attn, cfg.layout, cfg.downsample)
    diag = {
        "snippet_id": snippet.id,
        "n_contexts": len(contexts),
        "n_attention_records": len(attentions),
        **node_attn.diagnostics(),
        "unplaced_node_mass": unplaced_mass(tree, node_attn),
        "map_width": field.width,
        "map_height": field.height,
        "downsample": field.downsample,
        "map_max": float(field.values.max()),
        **cfg.provenance(),
    }
    return MapResult(tree, contexts, node_attn, field, diag)


def write_map(result: MapResult, out_dir: str | Path, stem: str) -> dict[str, Path]:
    out_dir = Path(out_dir)
    csv_path, pgm_path = render_field(result.field, out_dir / f"{stem}.map")
    diag_path = out_dir / f"{stem}.diagnostics.json"
    atomic_write_text(diag_path, json.dumps(result.diagnostics, indent=2, sort_keys=True) + "\n")
    return {"csv": csv_path, "pgm": pgm_path, "diagnostics": diag_path}


def map_stem(path: str | Path) -> str:
    name = Path(path).name
    for suffix in (".map.csv", ".csv"):
        if name.endswith(suffix):
            return name[: -len(suffix)]
    return Path(path).stem


def evaluate_files(map_csv: str | Path, gaze_csv: str | Path, cfg: RunConfig, snippet_id: str | None = None) -> EvalReport:
    side = cfg.layout.clip.side
    field = read_field_csv(map_csv)
    if field.width != field.height or side % field.width:
        raise ConfigError(f"map grid {field.width}x{field.height} does not tile the {side}px clip square")
    field.downsample = side // field.width
    points, stats = load_gaze(gaze_csv, cfg.layout, cfg.t_range)
    hist = gaze_histogram(points, side, field.downsample, stats.removed_fraction)
    gaze_stats = stats.to_dict()
    gaze_stats["gazed_cells"] = int((hist.counts > 0).sum())
    return evaluate(field, hist, snippet_id or map_stem(map_csv), gaze_stats)


def write_eval(report: EvalReport, cfg: RunConfig, out_dir: str | Path, stem: str) -> dict[str, Path]:
    out_dir = Path(out_dir)
    doc = report.to_dict()
    doc.update(cfg.provenance())
    json_path = out_dir / f"{stem}.eval.json"
    roc_path = out_dir / f"{stem}.roc.csv"
    atomic_write_text(json_path, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    atomic_write_text(roc_path, roc_csv(report.roc))
    return {"report": json_path, "roc": roc_path}

