"""Immutable syntax tree with source spans and representative tokens."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Mapping, Sequence

from codeattn.errors import EncodingError, UnknownNode


@dataclass(frozen=True)
class SourceSnippet:
    id: str
    text: str
    normalized: bool = False

    def __post_init__(self):
        if self.normalized and "\t" in self.text:
            raise ValueError(f"snippet {self.id!r} marked normalized but contains tabs")

    @property
    def line_count(self) -> int:
        return len(split_lines(self.text))

    @classmethod
    def from_bytes(cls, id: str, data: bytes, normalize: bool = True) -> "SourceSnippet":
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise EncodingError(f"{id}: not valid UTF-8 ({exc.reason} at byte {exc.start})") from exc
        if text.startswith("\ufeff"):
            text = text[1:]
        if normalize:
            from codeattn.corpus import normalize_indent

            text = normalize_indent(text)
        return cls(id, text, normalized=normalize)

    @classmethod
    def read(cls, path: str | Path, normalize: bool = True) -> "SourceSnippet":
        path = Path(path)
        return cls.from_bytes(path.stem, path.read_bytes(), normalize=normalize)


def split_lines(text: str) -> list[str]:
    """Lines of ``text`` after trimming at most one trailing newline."""
    if text.endswith("\n"):
        text = text[:-1]
    return [ln[:-1] if ln.endswith("\r") else ln for ln in text.split("\n")]


@dataclass(frozen=True, order=True)
class Span:
    """0-based, end-exclusive character range."""

    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __post_init__(self):
        if (self.start_line, self.start_col) > (self.end_line, self.end_col):
            raise ValueError(f"span start after end: {self}")

    @property
    def start(self) -> tuple[int, int]:
        return (self.start_line, self.start_col)

    @property
    def end(self) -> tuple[int, int]:
        return (self.end_line, self.end_col)

    def contains(self, other: "Span") -> bool:
        return self.start <= other.start and other.end <= self.end

    def human(self) -> str:
        """1-based ``line:col-line:col`` rendering for reports."""
        return f"{self.start_line + 1}:{self.start_col + 1}-{self.end_line + 1}:{self.end_col + 1}"


@dataclass(frozen=True)
class Token:
    text: str
    span: Span
    owner: int

    @property
    def line(self) -> int:
        return self.span.start_line


@dataclass(frozen=True)
class SyntaxNode:
    id: int
    type_name: str
    span: Span
    parent: int | None
    children: tuple[int, ...]
    is_terminal: bool


@dataclass(frozen=True, eq=False)
class SyntaxTree:
    """A rooted tree of ``SyntaxNode`` indexed by id.

    Node 0 is the root. ``tokens`` maps a node id to its representative token;
    a node without an entry is purely structural.
    """

    nodes: tuple[SyntaxNode, ...]
    tokens: Mapping[int, Token]
    source: str = ""
    snippet_id: str = ""
    _child_index: dict[int, int] = field(init=False, repr=False)

    def __post_init__(self):
        idx: dict[int, int] = {}
        for n in self.nodes:
            for i, c in enumerate(n.children):
                idx[c] = i
        object.__setattr__(self, "_child_index", idx)

    @classmethod
    def build(
        cls,
        types: Sequence[str],
        spans: Sequence[Span],
        parents: Sequence[int | None],
        tokens: Mapping[int, tuple[str, Span]],
        source: str = "",
        snippet_id: str = "",
    ) -> "SyntaxTree":
        """Assemble a tree from parallel per-node arrays.

        Children keep the order in which they appear in ``parents``. A node is
        terminal when it has no children and owns a token.
        """
        children: list[list[int]] = [[] for _ in types]
        for i, p in enumerate(parents):
            if p is not None:
                children[p].append(i)
        nodes = tuple(
            SyntaxNode(
                id=i,
                type_name=types[i],
                span=spans[i],
                parent=parents[i],
                children=tuple(children[i]),
                is_terminal=not children[i] and i in tokens,
            )
            for i in range(len(types))
        )
        toks = {i: Token(text, span, i) for i, (text, span) in tokens.items()}
        tree = cls(nodes, toks, source, snippet_id)
        tree.validate()
        return tree

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self) -> Iterator[SyntaxNode]:
        return iter(self.nodes)

    @property
    def root(self) -> SyntaxNode:
        return self.nodes[0]

    def node(self, node_id: int) -> SyntaxNode:
        if not isinstance(node_id, int) or not 0 <= node_id < len(self.nodes):
            raise UnknownNode(f"no node {node_id!r} in tree")
        return self.nodes[node_id]

    def child_index(self, node_id: int) -> int:
        """Position of ``node_id`` among its parent's children."""
        return self._child_index[node_id]

    def root_path(self, node_id: int) -> list[int]:
        """Node ids from the root down to ``node_id`` inclusive."""
        path = []
        cur: int | None = node_id
        while cur is not None:
            path.append(cur)
            cur = self.nodes[cur].parent
        path.reverse()
        return path

    def validate(self) -> None:
        """Check the structural invariants; raises ValueError on violation."""
        if not self.nodes:
            raise ValueError("empty tree")
        roots = [n.id for n in self.nodes if n.parent is None]
        if roots != [0]:
            raise ValueError(f"expected single root 0, got {roots}")
        seen = set()
        stack = [0]
        while stack:
            nid = stack.pop()
            if nid in seen:
                raise ValueError(f"cycle through node {nid}")
            seen.add(nid)
            n = self.nodes[nid]
            if n.id != nid:
                raise ValueError(f"node at index {nid} has id {n.id}")
            if n.is_terminal and n.children:
                raise ValueError(f"terminal {nid} has children")
            for c in n.children:
                if self.nodes[c].parent != nid:
                    raise ValueError(f"child {c} does not point back to {nid}")
                if not n.span.contains(self.nodes[c].span):
                    raise ValueError(f"node {nid} span does not contain child {c}")
                stack.append(c)
        if len(seen) != len(self.nodes):
            raise ValueError("unreachable nodes present")
        for nid, tok in self.tokens.items():
            if tok.owner != nid:
                raise ValueError(f"token owned by {tok.owner} stored under {nid}")
            if tok.span.start_line != tok.span.end_line:
                raise ValueError(f"token of node {nid} spans lines")
