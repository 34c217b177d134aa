"""Java parsing into span-annotated syntax trees."""

from __future__ import annotations

from codeattn.errors import EncodingError, ParseError, UnknownNode
from codeattn.syntax.parser import parse_source
from codeattn.syntax.tree import SourceSnippet, Span, SyntaxNode, SyntaxTree, Token, split_lines
from codeattn.syntax.vocabulary import NODE_TYPES


def node_token(tree: SyntaxTree, node: int) -> Token | None:
    """Representative token of ``node``, or None for structural nodes."""
    tree.node(node)
    return tree.tokens.get(node)


def list_terminals(tree: SyntaxTree) -> list[int]:
    """Terminal node ids ordered by source position."""
    terms = [n for n in tree.nodes if n.is_terminal]
    terms.sort(key=lambda n: (n.span.start, n.span.end, n.id))
    return [n.id for n in terms]


def dump_ast(tree: SyntaxTree) -> str:
    """One line per node: ``id, type, 1-based span, token`` (tab separated)."""
    lines = []
    for n in tree.nodes:
        tok = tree.tokens.get(n.id)
        lines.append(f"{n.id}\t{n.type_name}\t{n.span.human()}\t{tok.text if tok else ''}")
    return "\n".join(lines) + "\n"


__all__ = [
    "EncodingError",
    "NODE_TYPES",
    "ParseError",
    "SourceSnippet",
    "Span",
    "SyntaxNode",
    "SyntaxTree",
    "Token",
    "UnknownNode",
    "dump_ast",
    "list_terminals",
    "node_token",
    "parse_source",
    "split_lines",
]
