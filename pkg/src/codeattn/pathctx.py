"""Path-context extraction over terminal pairs, with deterministic capping."""

from __future__ import annotations

from dataclasses import dataclass

from codeattn.syntax import SyntaxTree, list_terminals


@dataclass(frozen=True)
class ExtractionLimits:
    max_length: int = 8
    max_width: int = 2
    max_contexts: int = 200

    def __post_init__(self):
        for name in ("max_length", "max_width", "max_contexts"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be an integer >= 1, got {v!r}")


@dataclass(frozen=True)
class PathContext:
    """Route between two terminals through their lowest common ancestor.

    ``node_path`` runs from ``start_terminal`` up to ``ancestor`` and down to
    ``end_terminal``; ``length`` counts edges.
    """

    start_terminal: int
    end_terminal: int
    node_path: tuple[int, ...]
    length: int
    width: int
    ancestor: int

    @property
    def ancestor_index(self) -> int:
        return self.node_path.index(self.ancestor)


def _span_key(tree: SyntaxTree, node_id: int):
    s = tree.nodes[node_id].span
    return (s.start_line, s.start_col, s.end_line, s.end_col)


def all_path_contexts(tree: SyntaxTree, limits: ExtractionLimits | None = None) -> list[PathContext]:
    """Every terminal pair within the length/width limits, uncapped."""
    limits = limits or ExtractionLimits()
    terms = list_terminals(tree)
    root_paths = [tree.root_path(t) for t in terms]
    out = []
    for i, pa in enumerate(root_paths):
        da = len(pa)
        for pb in root_paths[i + 1:]:
            if abs(len(pb) - da) > limits.max_length:
                continue
            k = 0
            m = min(da, len(pb))
            while k < m and pa[k] == pb[k]:
                k += 1
            length = (da - k) + (len(pb) - k)
            if length > limits.max_length:
                continue
            width = abs(tree.child_index(pb[k]) - tree.child_index(pa[k]))
            if width > limits.max_width:
                continue
            node_path = tuple(reversed(pa[k - 1:])) + tuple(pb[k:])
            out.append(PathContext(pa[-1], pb[-1], node_path, length, width, pa[k - 1]))
    return out


def extract_path_contexts(tree: SyntaxTree, limits: ExtractionLimits | None = None) -> list[PathContext]:
    """Path contexts within limits, capped at ``limits.max_contexts``.

    When too many survive, the shortest are kept (ties by start then end
    terminal position). The result is ordered by (start span, end span).
    """
    limits = limits or ExtractionLimits()
    contexts = all_path_contexts(tree, limits)

    def pos(pc: PathContext):
        return (_span_key(tree, pc.start_terminal), _span_key(tree, pc.end_terminal))

    if len(contexts) > limits.max_contexts:
        contexts.sort(key=lambda pc: (pc.length, pos(pc)))
        contexts = contexts[: limits.max_contexts]
    contexts.sort(key=pos)
    return contexts


def canonical_string(tree: SyntaxTree, pc: PathContext) -> str:
    """``start,Type^...^Ancestor_..._Type,end`` key for a path context."""
    up = pc.ancestor_index
    parts = []
    for i, nid in enumerate(pc.node_path):
        if i:
            parts.append("^" if i <= up else "_")
        parts.append(tree.nodes[nid].type_name)
    start = tree.tokens[pc.start_terminal].text
    end = tree.tokens[pc.end_terminal].text
    return f"{start},{''.join(parts)},{end}"


def dump_contexts(tree: SyntaxTree, contexts: list[PathContext]) -> str:
    return "".join(canonical_string(tree, pc) + "\n" for pc in contexts)
