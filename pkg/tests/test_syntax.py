import pytest
from hypothesis import given, strategies as st

from codeattn.errors import EncodingError, ParseError, UnknownNode
from codeattn.syntax import (
    NODE_TYPES,
    SourceSnippet,
    Span,
    dump_ast,
    list_terminals,
    node_token,
    parse_source,
    split_lines,
)
from codeattn.syntax.lexer import Kind, tokenize

from conftest import FIXTURES

# Hand-checked dump of the one-line fixture (spans are 1-based, end exclusive).
ONELINE_AST = """\
0	CompilationUnit	1:1-1:42	
1	ClassOrInterfaceDeclaration	1:1-1:42	class
2	SimpleName	1:7-1:8	A
3	MethodDeclaration	1:11-1:40	void
4	SimpleName	1:16-1:17	f
5	Block	1:19-1:40	
6	IfStmt	1:21-1:38	if
7	GreaterThan	1:25-1:30	>
8	NameExpr	1:25-1:26	x
9	IntegerLiteral	1:29-1:30	0
10	ExpressionStmt	1:32-1:38	
11	AssignExpr	1:32-1:37	=
12	NameExpr	1:32-1:33	y
13	IntegerLiteral	1:36-1:37	1
"""

# Punctuation that never gets its own node.
_PUNCT = set(";(){}[].,<>:@?|")


def _parse(name):
    return parse_source(SourceSnippet.read(FIXTURES / name))


@pytest.fixture(scope="module")
def wordcount():
    return _parse("wordcount.java")


@pytest.fixture(scope="module")
def rich():
    return _parse("rich.java")


def test_oneline_tree_shape():
    assert dump_ast(_parse("oneline.java")) == ONELINE_AST


def test_wordcount_counts(wordcount):
    assert SourceSnippet.read(FIXTURES / "wordcount.java").line_count == 21
    assert len(wordcount.nodes) == 83
    assert len(list_terminals(wordcount)) == 42
    assert {wordcount.tokens[t].text for t in list_terminals(wordcount)} >= {
        "Main", "main", "args", "Scanner", "in", "word", "count", "0", "true", '"END_OF_TEXT"',
    }


def test_wordcount_operator_nodes(wordcount):
    types = {n.type_name for n in wordcount.nodes}
    assert {"WhileStmt", "IfStmt", "BreakStmt", "PostIncrement", "AssignExpr", "BooleanLiteral"} <= types
    inc = next(n for n in wordcount.nodes if n.type_name == "PostIncrement")
    assert node_token(wordcount, inc.id).text == "++"
    assert [wordcount.nodes[c].type_name for c in inc.children] == ["NameExpr"]


@pytest.mark.parametrize("name", ["wordcount.java", "oneline.java", "rich.java"])
def test_tokens_round_trip(name):
    tree = _parse(name)
    lines = split_lines(tree.source)
    for nid, tok in tree.tokens.items():
        s = tok.span
        assert lines[s.start_line][s.start_col:s.end_col] == tok.text, (nid, tok)
        assert tree.nodes[nid].span.contains(s)


@pytest.mark.parametrize("name", ["wordcount.java", "oneline.java", "rich.java"])
def test_structure_invariants(name):
    tree = _parse(name)
    tree.validate()
    for n in tree.nodes:
        assert n.type_name in NODE_TYPES
        assert n.is_terminal == (not n.children and n.id in tree.tokens)
        # pre-order ids: children come after parents, in source order
        assert all(c > n.id for c in n.children)
        starts = [tree.nodes[c].span.start for c in n.children]
        assert starts == sorted(starts)


def test_terminals_in_source_order(rich):
    terms = list_terminals(rich)
    keys = [(rich.nodes[t].span.start, rich.nodes[t].span.end) for t in terms]
    assert keys == sorted(keys)
    assert all(rich.nodes[t].is_terminal for t in terms)


def test_identifiers_literals_operators_owned(rich):
    covered = set()
    for tok in rich.tokens.values():
        s = tok.span
        covered.update((s.start_line, c) for c in range(s.start_col, s.end_col))
    missing = []
    for lx in tokenize(rich.source):
        if lx.kind is Kind.EOF or lx.text in _PUNCT:
            continue
        if (lx.line, lx.col) not in covered:
            missing.append((lx.text, lx.line + 1))
    assert missing == []


def test_split_shift_and_generics():
    tree = parse_source("class A { Map<String, List<List<T>>> m; int f() { return a >> b >>> c; } }")
    types = [n.type_name for n in tree.nodes]
    assert "SignedRightShift" in types and "UnsignedRightShift" in types
    shifts = [tree.tokens[n.id].text for n in tree.nodes if n.type_name.endswith("RightShift")]
    assert sorted(shifts) == [">>", ">>>"]


def test_compound_assignment_token():
    tree = parse_source("class A { void f() { a >>>= 2; b += 1; } }")
    toks = {tree.nodes[i].type_name: t.text for i, t in tree.tokens.items()}
    assert toks["UnsignedRightShiftAssign"] == ">>>="
    assert toks["PlusAssign"] == "+="


def test_clause_nodes_own_keywords(rich):
    owned = {rich.nodes[i].type_name: t.text for i, t in rich.tokens.items()}
    for node, kw in [("ElseClause", "else"), ("CatchClause", "catch"), ("FinallyClause", "finally"),
                     ("ExtendsClause", "extends"), ("ImplementsClause", "implements"), ("ThrowsClause", "throws")]:
        assert owned[node] == kw


def test_bare_members_parse():
    tree = parse_source("int twice(int x) { return 2 * x; }")
    assert tree.root.type_name == "CompilationUnit"
    assert any(n.type_name == "Multiply" for n in tree.nodes)


def test_parse_is_deterministic(wordcount):
    again = _parse("wordcount.java")
    assert dump_ast(again) == dump_ast(wordcount)


@pytest.mark.parametrize(
    "src, line, col",
    [
        ("class A { void f( { } }", 0, 18),
        ("class A {\n  int x = ;\n}", 1, 10),
        ("class A {\n  String s = \"abc\n}", 1, 13),
        ("class A { /* never closed", 0, 10),
    ],
)
def test_parse_error_positions(src, line, col):
    with pytest.raises(ParseError) as ei:
        parse_source(src)
    assert (ei.value.line, ei.value.col) == (line, col)
    assert f"{line + 1}:{col + 1}" in str(ei.value)


def test_tab_is_rejected_unnormalized():
    with pytest.raises(ParseError) as ei:
        parse_source(SourceSnippet("t", "class A {\n\tint x;\n}"))
    assert (ei.value.line, ei.value.col) == (1, 0)


def test_snippet_from_bytes_normalizes_and_strips_bom():
    s = SourceSnippet.from_bytes("x", "﻿class A {\n\tint x;\n}\n".encode())
    assert s.text == "class A {\n  int x;\n}\n"
    assert s.normalized
    parse_source(s)


def test_snippet_bad_utf8():
    with pytest.raises(EncodingError):
        SourceSnippet.from_bytes("x", b"class \xff {}")


def test_node_token_unknown_node(wordcount):
    assert node_token(wordcount, 0) is None
    with pytest.raises(UnknownNode):
        node_token(wordcount, len(wordcount.nodes))
    with pytest.raises(KeyError):
        node_token(wordcount, -1)


def test_span_ordering_and_human():
    a = Span(0, 0, 0, 5)
    b = Span(0, 1, 0, 3)
    assert a.contains(b) and not b.contains(a)
    assert b.human() == "1:2-1:4"
    with pytest.raises(ValueError):
        Span(1, 0, 0, 0)


_IDENT = st.from_regex(r"[a-z][a-zA-Z0-9]{0,6}", fullmatch=True).filter(
    lambda s: s not in {"do", "if", "for", "int", "new", "try", "case", "char", "else", "enum",
                        "goto", "long", "null", "this", "true", "void", "byte", "false", "final",
                        "float", "short", "super", "throw", "while", "break", "catch", "class",
                        "const", "double", "import", "native", "public", "return", "static",
                        "switch", "throws", "assert", "boolean", "default", "extends", "finally",
                        "package", "private", "abstract", "continue", "strictfp", "volatile",
                        "interface", "protected", "transient", "implements", "instanceof",
                        "synchronized", "var", "yield", "record"}
)


@st.composite
def _expr(draw, depth=0):
    if depth > 3 or draw(st.booleans()):
        return draw(st.one_of(_IDENT, st.integers(0, 999).map(str)))
    op = draw(st.sampled_from(["+", "-", "*", "<", ">", ">>", "==", "&&", "||", "%"]))
    return f"({draw(_expr(depth + 1))} {op} {draw(_expr(depth + 1))})"


@given(_expr(), _IDENT)
def test_generated_expressions_round_trip(expr, name):
    src = f"class A {{\n  void {name}() {{\n    x = {expr};\n  }}\n}}\n"
    tree = parse_source(src)
    tree.validate()
    lines = split_lines(src)
    for tok in tree.tokens.values():
        s = tok.span
        assert lines[s.start_line][s.start_col:s.end_col] == tok.text
    assert dump_ast(parse_source(src)) == dump_ast(tree)


def test_node_type_doc_lists_vocabulary():
    from pathlib import Path

    doc = (Path(__file__).resolve().parents[1] / "docs" / "node_types.md").read_text()
    assert all(f"| `{t}` |" in doc for t in NODE_TYPES)


def test_if_and_while_tokens_in_wordcount():
    tree = _parse("wordcount.java")
    ifs = [tree.tokens[n.id] for n in tree.nodes if n.type_name == "IfStmt"]
    assert [(t.text, t.span.start_line + 1) for t in ifs] == [("if", 11), ("if", 15)]
    (w,) = [tree.tokens[n.id] for n in tree.nodes if n.type_name == "WhileStmt"]
    assert (w.text, w.span.start_line + 1) == ("while", 9)
    assert node_token(tree, next(n.id for n in tree.nodes if n.type_name == "Block")) is None


def test_empty_class():
    tree = parse_source("class A {}")
    assert [n.type_name for n in tree.nodes] == ["CompilationUnit", "ClassOrInterfaceDeclaration", "SimpleName"]
    assert [tree.tokens[t].text for t in list_terminals(tree)] == ["A"]


def test_oneline_terminal_order():
    tree = _parse("oneline.java")
    assert [tree.tokens[t].text for t in list_terminals(tree)] == ["A", "f", "x", "0", "y", "1"]
    gt = next(n for n in tree.nodes if n.type_name == "GreaterThan")
    assert node_token(tree, gt.id).text == ">"
