"""Command-line entry point.

Exit codes::

    0  success
    1  unexpected internal error
    2  Java parse or encoding error
    3  configuration or usage error (bad flags, config file, layout, k map)
    4  attention file format error
    5  degenerate gaze (no retained points, or G+ / G- sums to zero)
    6  other input format error (map CSV, gaze CSV, corpus manifest)
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from codeattn import __version__
from codeattn._io import atomic_write_text
from codeattn.config import UNIFORM, RunConfig, parse_t_range
from codeattn.corpus import compute_stats, load_manifest, normalize_indent, select_snippets, stats_csv
from codeattn.errors import (
    BadDownsample,
    ConfigError,
    DegenerateGaze,
    EmptyInput,
    EncodingError,
    FormatError,
    InsufficientSnippets,
    LayoutOverflow,
    ParseError,
)
from codeattn.pathctx import dump_contexts, extract_path_contexts
from codeattn.pipeline import build_map, evaluate_files, write_eval, write_map
from codeattn.syntax import SourceSnippet, dump_ast, parse_source

EXIT_OK, EXIT_INTERNAL, EXIT_PARSE, EXIT_CONFIG, EXIT_ATTENTION, EXIT_GAZE, EXIT_FORMAT = range(7)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _config(args) -> RunConfig:
    cfg = RunConfig.load(args.config) if getattr(args, "config", None) else RunConfig()
    over = {}
    if getattr(args, "downsample", None) is not None:
        over["downsample"] = args.downsample
    if getattr(args, "t_range", None):
        over["t_range"] = parse_t_range(args.t_range)
    if getattr(args, "out", None):
        over["output_dir"] = args.out
    if getattr(args, "uniform", False):
        over["attention_source"] = UNIFORM
    elif getattr(args, "attention", None):
        over["attention_source"] = args.attention
    try:
        return cfg.with_overrides(**over)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def _read_snippet(path: str) -> SourceSnippet:
    try:
        return SourceSnippet.read(path)
    except FileNotFoundError:
        raise ConfigError(f"no such file: {path}") from None


def cmd_contexts(java_file: str, cfg: RunConfig, out: TextIO, dump_ast_only: bool = False) -> int:
    tree = parse_source(_read_snippet(java_file))
    if dump_ast_only:
        out.write(dump_ast(tree))
    else:
        out.write(dump_contexts(tree, extract_path_contexts(tree, cfg.limits)))
    return EXIT_OK


def cmd_map(java_file: str, cfg: RunConfig, out: TextIO, err: TextIO, dump_ctx: bool = False) -> int:
    if cfg.attention_source != UNIFORM and not Path(cfg.attention_source).exists():
        raise ConfigError(f"attention file not found: {cfg.attention_source}")
    snippet = _read_snippet(java_file)
    result = build_map(snippet, cfg)
    if result.diagnostics["n_attention_records"] == 0:
        err.write("warning: no attention records; the map is all zero\n")
    elif result.node_attention.matched == 0:
        err.write("warning: no attention record matched an extracted context\n")
    paths = write_map(result, cfg.output_dir, snippet.id)
    if dump_ctx:
        ctx_path = Path(cfg.output_dir) / f"{snippet.id}.contexts.txt"
        atomic_write_text(ctx_path, dump_contexts(result.tree, result.contexts))
        paths["contexts"] = ctx_path
    for kind, p in paths.items():
        err.write(f"wrote {kind}: {p}\n")
    out.write(json.dumps(result.diagnostics, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_eval(map_csv: str, gaze_csv: str, cfg: RunConfig, out: TextIO, err: TextIO, snippet_id: str | None = None) -> int:
    for p in (map_csv, gaze_csv):
        if not Path(p).exists():
            raise ConfigError(f"no such file: {p}")
    report = evaluate_files(map_csv, gaze_csv, cfg, snippet_id)
    stats = report.gaze_stats
    if stats.get("removed_fraction", 0) >= 0.001:
        err.write(f"note: {stats['removed_fraction']:.2%} of gaze samples were removed\n")
    paths = write_eval(report, cfg, cfg.output_dir, report.snippet_id)
    for kind, p in paths.items():
        err.write(f"wrote {kind}: {p}\n")
    doc = report.to_dict()
    doc.update(cfg.provenance())
    out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_corpus(manifest: str, k_map: dict[str, int], default_k: int, cfg: RunConfig, out: TextIO, err: TextIO, cpl: str = "mean") -> int:
    if not Path(manifest).exists():
        raise ConfigError(f"no such file: {manifest}")
    stats = []
    for entry in load_manifest(manifest):
        snippet = SourceSnippet.read(entry["path"])
        snippet = SourceSnippet(entry["id"], snippet.text, snippet.normalized)
        stats.append(compute_stats(snippet, entry["label"], cpl=cpl))
    selection = select_snippets(stats, k_map, default_k)
    csv_path = Path(cfg.output_dir) / "corpus_stats.csv"
    atomic_write_text(csv_path, stats_csv(selection))
    err.write(f"wrote stats: {csv_path}\n")
    out.write(json.dumps({"selected": selection.by_label(), "n_selected": len(selection.selected)},
                         indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_normalize(path: str, dest: str | None, out: TextIO) -> int:
    try:
        raw = Path(path).read_bytes()
    except FileNotFoundError:
        raise ConfigError(f"no such file: {path}") from None
    text = normalize_indent(SourceSnippet.from_bytes(Path(path).stem, raw, normalize=False).text)
    if dest:
        atomic_write_text(dest, text)
    else:
        out.write(text)
    return EXIT_OK


def _k_entry(value: str) -> tuple[str, int]:
    label, sep, k = value.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected LABEL=K, got {value!r}")
    try:
        return label, int(k)
    except ValueError:
        raise argparse.ArgumentTypeError(f"K must be an integer in {value!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="codeattn", description="Attention maps for source code and their agreement with gaze.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, out=True):
        sp.add_argument("--config", help="run config JSON")
        if out:
            sp.add_argument("--out", help="output directory (overrides config)")

    sp = sub.add_parser("contexts", help="print canonical path contexts of a Java file")
    sp.add_argument("java_file")
    sp.add_argument("--dump-ast", action="store_true", help="print the syntax tree instead")
    sp.add_argument("--dump-contexts", action="store_true", help="print contexts (default)")
    common(sp, out=False)

    sp = sub.add_parser("map", help="generate the spatial attention map of a Java file")
    sp.add_argument("java_file")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--attention", help="attention file (<canonical_string>\\t<value> per line)")
    g.add_argument("--uniform", action="store_true", help="weight every context 1/N")
    sp.add_argument("--downsample", type=int)
    sp.add_argument("--dump-contexts", action="store_true", help="also write <id>.contexts.txt")
    common(sp)

    sp = sub.add_parser("eval", help="ROC/AUC of a map against a gaze recording")
    sp.add_argument("map_csv")
    sp.add_argument("gaze_csv")
    sp.add_argument("--t-range", help="time window START:END in seconds")
    sp.add_argument("--id", dest="snippet_id")
    common(sp)

    sp = sub.add_parser("corpus", help="LOC/CPL statistics and snippet selection")
    sp.add_argument("manifest")
    sp.add_argument("--k", action="append", type=_k_entry, default=[], metavar="LABEL=K")
    sp.add_argument("--default-k", type=int, default=6)
    sp.add_argument("--cpl", choices=["mean", "median", "max"], default="mean")
    common(sp)

    sp = sub.add_parser("normalize", help="replace tabs with two spaces")
    sp.add_argument("file")
    sp.add_argument("--out", help="write here instead of stdout")
    return p


def main(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    args = None
    try:
        args = build_parser().parse_args(argv)
        if args.command == "normalize":
            return cmd_normalize(args.file, args.out, out)
        cfg = _config(args)
        if args.command == "contexts":
            return cmd_contexts(args.java_file, cfg, out, args.dump_ast)
        if args.command == "map":
            return cmd_map(args.java_file, cfg, out, err, args.dump_contexts)
        if args.command == "eval":
            return cmd_eval(args.map_csv, args.gaze_csv, cfg, out, err, args.snippet_id)
        if args.command == "corpus":
            return cmd_corpus(args.manifest, dict(args.k), args.default_k, cfg, out, err, args.cpl)
    except _UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_CONFIG
    except (ParseError, EncodingError) as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except (ConfigError, BadDownsample, LayoutOverflow, InsufficientSnippets) as exc:
        err.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    except (DegenerateGaze, EmptyInput) as exc:
        err.write(f"degenerate gaze: {exc}\n")
        return EXIT_GAZE
    except (FormatError, ValueError) as exc:
        if args is not None and args.command == "map":
            err.write(f"attention format error: {exc}\n")
            return EXIT_ATTENTION
        err.write(f"format error: {exc}\n")
        return EXIT_FORMAT
    except OSError as exc:
        err.write(f"i/o error: {exc}\n")
        return EXIT_INTERNAL
    return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
