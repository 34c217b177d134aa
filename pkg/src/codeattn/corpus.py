"""Snippet statistics (LOC, characters per line) and minimum-deviation selection."""

from __future__ import annotations

import csv
import io
import json
import math
import statistics
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Mapping

from codeattn.errors import FormatError, InsufficientSnippets

DEFAULT_K = 6

_CPL_AGGREGATES = {
    "mean": statistics.fmean,
    "median": statistics.median,
    "max": max,
}


def normalize_indent(text: str) -> str:
    """Replace every tab with two spaces. Idempotent."""
    return text.replace("\t", "  ")


@dataclass(frozen=True)
class SnippetStats:
    id: str
    loc: int
    cpl_mean: float
    deviation: float = 0.0
    label: str = ""


def compute_stats(snippet, label: str = "", cpl: str = "mean") -> SnippetStats:
    """LOC and per-line character statistics of a normalized snippet.

    LOC counts every line, blank ones included, after trimming one trailing
    newline. ``cpl`` picks the per-snippet aggregate of characters per line.
    """
    from codeattn.syntax.tree import split_lines

    lines = split_lines(snippet.text)
    widths = [len(ln) for ln in lines]
    try:
        agg = _CPL_AGGREGATES[cpl]
    except KeyError:
        raise ValueError(f"unknown CPL aggregate {cpl!r}") from None
    return SnippetStats(snippet.id, len(lines), float(agg(widths)), 0.0, label)


def _zscores(values: list[float]) -> list[float]:
    mu = statistics.fmean(values)
    sd = statistics.pstdev(values)
    if sd == 0:
        return [0.0] * len(values)
    return [(v - mu) / sd for v in values]


@dataclass
class Selection:
    stats: list[SnippetStats]
    selected: list[str]

    def is_selected(self, snippet_id: str) -> bool:
        return snippet_id in set(self.selected)

    def by_label(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {}
        sel = set(self.selected)
        for s in self.stats:
            if s.id in sel:
                out.setdefault(s.label, []).append(s.id)
        return out


def select_snippets(
    stats: Iterable[SnippetStats],
    k_per_label: Mapping[str, int] | None = None,
    default_k: int = DEFAULT_K,
) -> Selection:
    """Pick the ``k`` lowest-deviation snippets for each label.

    Deviation is the Euclidean norm of the LOC and CPL z-scores computed over
    the whole corpus (population stddev; a zero stddev contributes 0).
    Ties are broken by id.
    """
    stats = list(stats)
    if not stats:
        raise InsufficientSnippets("empty corpus")
    k_per_label = dict(k_per_label or {})
    z_loc = _zscores([float(s.loc) for s in stats])
    z_cpl = _zscores([s.cpl_mean for s in stats])
    scored = [replace(s, deviation=math.hypot(a, b)) for s, a, b in zip(stats, z_loc, z_cpl)]

    groups: dict[str, list[SnippetStats]] = {}
    for s in scored:
        groups.setdefault(s.label, []).append(s)
    unknown = set(k_per_label) - set(groups)
    if unknown:
        raise InsufficientSnippets(f"no snippets for label(s) {sorted(unknown)}")
    selected: list[str] = []
    for label in sorted(groups):
        k = k_per_label.get(label, default_k)
        members = sorted(groups[label], key=lambda s: (s.deviation, s.id))
        if len(members) < k:
            raise InsufficientSnippets(f"label {label!r} has {len(members)} snippets, needs {k}")
        selected.extend(s.id for s in members[:k])
    return Selection(scored, selected)


def load_manifest(path: str | Path) -> list[dict]:
    """Read a JSON list of ``{id, path, label}``; paths resolve against the manifest."""
    path = Path(path)
    try:
        entries = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc.msg}", exc.lineno) from None
    if not isinstance(entries, list):
        raise FormatError(f"{path}: expected a JSON list")
    out = []
    for i, e in enumerate(entries):
        if not isinstance(e, dict) or not {"id", "path", "label"} <= set(e):
            raise FormatError(f"{path}: entry {i} needs id, path, label")
        out.append({"id": str(e["id"]), "path": path.parent / e["path"], "label": str(e["label"])})
    return out


def stats_csv(selection: Selection) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "label", "loc", "cpl_mean", "deviation", "selected"])
    sel = set(selection.selected)
    for s in sorted(selection.stats, key=lambda s: (s.label, s.id)):
        w.writerow([s.id, s.label, s.loc, repr(s.cpl_mean), repr(s.deviation), int(s.id in sel)])
    return buf.getvalue()
