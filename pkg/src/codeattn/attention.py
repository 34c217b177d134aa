"""Path-attention files and their aggregation onto syntax nodes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from codeattn.errors import EmptyInput, FormatError
from codeattn.pathctx import PathContext, canonical_string
from codeattn.syntax import SyntaxTree


@dataclass(frozen=True)
class PathAttention:
    key: str
    value: float

    def __post_init__(self):
        if not math.isfinite(self.value) or self.value < 0:
            raise ValueError(f"attention must be finite and >= 0, got {self.value!r}")


@dataclass
class NodeAttention:
    """Per-node attention plus binding diagnostics."""

    values: dict[int, float]
    matched: int = 0
    unmatched: int = 0
    unused_keys: int = 0
    matched_mass: float = 0.0  # sum over matched contexts of attention * path size

    def __getitem__(self, node_id: int) -> float:
        return self.values.get(node_id, 0.0)

    def get(self, node_id: int, default: float = 0.0) -> float:
        return self.values.get(node_id, default)

    @property
    def total(self) -> float:
        return math.fsum(self.values.values())

    def scaled(self, c: float) -> "NodeAttention":
        return NodeAttention({k: v * c for k, v in self.values.items()}, self.matched,
                             self.unmatched, self.unused_keys, self.matched_mass * c)

    def diagnostics(self) -> dict:
        return {
            "matched_contexts": self.matched,
            "unmatched_contexts": self.unmatched,
            "unused_attention_keys": self.unused_keys,
            "total_node_mass": self.total,
        }


def parse_attention(text: str) -> list[PathAttention]:
    """Parse ``<key>\\t<value>`` records; later duplicates overwrite earlier ones."""
    records: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        key, sep, value = line.rpartition("\t")
        if not sep or not key:
            raise FormatError("expected '<canonical_string>\\t<value>'", lineno)
        try:
            v = float(value.strip())
        except ValueError:
            raise FormatError(f"bad attention value {value.strip()!r}", lineno) from None
        if not math.isfinite(v):
            raise ValueError(f"line {lineno}: attention must be finite, got {value.strip()!r}")
        if v < 0:
            raise ValueError(f"line {lineno}: attention must be >= 0, got {v!r}")
        records[key] = v
    return [PathAttention(k, v) for k, v in records.items()]


def load_attention(path: str | Path) -> list[PathAttention]:
    raw = Path(path).read_bytes()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise FormatError(f"{path}: not valid UTF-8") from exc
    return parse_attention(text)


def format_attention(records: Iterable[PathAttention]) -> str:
    return "".join(f"{r.key}\t{r.value!r}\n" for r in records)


def uniform_attention(tree: SyntaxTree, contexts: Sequence[PathContext]) -> list[PathAttention]:
    """Weight 1/N for each of the N contexts, keyed by canonical string."""
    if not contexts:
        raise EmptyInput("no path contexts to weight")
    w = 1.0 / len(contexts)
    return [PathAttention(canonical_string(tree, pc), w) for pc in contexts]


def aggregate_node_attention(
    tree: SyntaxTree,
    contexts: Sequence[PathContext],
    attentions: Iterable[PathAttention],
) -> NodeAttention:
    """Add each context's attention to every node on its path.

    Every extracted instance of a canonical string receives that string's
    value. Contexts without a value contribute nothing and are counted.
    """
    table: dict[str, float] = {}
    for rec in attentions:
        table[rec.key] = rec.value
    parts: dict[int, list[float]] = {}
    mass: list[float] = []
    matched = unmatched = 0
    used = set()
    for pc in contexts:
        key = canonical_string(tree, pc)
        a = table.get(key)
        if a is None:
            unmatched += 1
            continue
        matched += 1
        used.add(key)
        mass.append(a * len(pc.node_path))
        for nid in pc.node_path:
            parts.setdefault(nid, []).append(a)
    values = {n.id: math.fsum(parts.get(n.id, ())) for n in tree.nodes}
    return NodeAttention(values, matched, unmatched, len(set(table) - used), math.fsum(mass))
