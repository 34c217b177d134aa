"""Recursive-descent parser for Java source into a ``SyntaxTree``.

Covers the Java 8 language plus ``var``, switch arrows/expressions, and
``yield``. Node type names and representative tokens follow the table in
``codeattn.syntax.vocabulary``. The parser builds mutable ``_N`` records,
then freezes them into a ``SyntaxTree`` with pre-order ids.
"""

from __future__ import annotations

from codeattn.errors import ParseError
from codeattn.syntax.lexer import PRIMITIVE_TYPES, Kind, Lexeme, tokenize
from codeattn.syntax.tree import SourceSnippet, Span, SyntaxTree
from codeattn.syntax.vocabulary import (
    ASSIGN_OPERATORS,
    BINARY_OPERATORS,
    BINARY_PRECEDENCE,
    LITERAL_TYPES,
)

MODIFIERS = frozenset(
    "public protected private static abstract final native synchronized "
    "transient volatile strictfp default".split()
)
_CAST_FOLLOW = frozenset("( ! ~ this super new true false null switch".split()) | PRIMITIVE_TYPES
_CAST_FOLLOW_KINDS = (Kind.IDENT, Kind.INT, Kind.LONG, Kind.FLOAT, Kind.CHAR, Kind.STRING)
_DECL_FOLLOW = frozenset(["=", ",", ";", "[", ":"])


class _N:
    __slots__ = ("type", "children", "tok", "start", "end")

    def __init__(self, type_name: str, start, tok=None):
        self.type = type_name
        self.children: list[_N] = []
        if isinstance(start, Lexeme):
            start = (start.line, start.col)
        elif isinstance(start, _N):
            start = start.start
        self.start: tuple[int, int] = start
        self.end: tuple[int, int] = start
        if isinstance(tok, Lexeme):
            tok = (tok.text, tok.line, tok.col)
        self.tok: tuple[str, int, int] | None = tok

    def add(self, child: "_N | None") -> "_N":
        if child is not None:
            self.children.append(child)
        return self


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.pos = 0

    # -- token helpers -----------------------------------------------------

    def peek(self, k: int = 0) -> Lexeme:
        i = min(self.pos + k, len(self.toks) - 1)
        return self.toks[i]

    def at(self, text: str) -> bool:
        t = self.toks[self.pos]
        return t.text == text and t.kind in (Kind.OP, Kind.KEYWORD, Kind.IDENT)

    def advance(self) -> Lexeme:
        t = self.toks[self.pos]
        if t.kind is not Kind.EOF:
            self.pos += 1
        return t

    def accept(self, text: str) -> Lexeme | None:
        if self.at(text):
            return self.advance()
        return None

    def expect(self, text: str) -> Lexeme:
        if self.at(text):
            return self.advance()
        self.fail(f"expected {text!r}")

    def ident(self) -> Lexeme:
        t = self.peek()
        if t.kind is not Kind.IDENT:
            self.fail("expected identifier")
        return self.advance()

    def fail(self, message: str, tok: Lexeme | None = None):
        t = tok or self.peek()
        found = "end of input" if t.kind is Kind.EOF else repr(t.text)
        raise ParseError(f"{message}, found {found}", t.line, t.col)

    def done(self, n: _N) -> _N:
        prev = self.toks[self.pos - 1] if self.pos else self.toks[0]
        n.end = max(n.start, (prev.line, prev.end_col))
        return n

    def leaf(self, type_name: str, tok: Lexeme | None = None) -> _N:
        t = tok or self.advance()
        n = _N(type_name, t, tok=t)
        n.end = (t.line, t.end_col)
        return n

    # -- compilation unit / declarations ------------------------------------

    def compilation_unit(self) -> _N:
        cu = _N("CompilationUnit", self.peek())
        if self.at("package"):
            kw = self.advance()
            n = _N("PackageDeclaration", kw, tok=kw)
            self.qualified_names(n)
            self.expect(";")
            cu.add(self.done(n))
        while self.at("import"):
            kw = self.advance()
            n = _N("ImportDeclaration", kw, tok=kw)
            if self.at("static"):
                n.add(self.leaf("Modifier"))
            n.add(self.leaf("SimpleName", self.ident()))
            while self.accept("."):
                if self.at("*"):
                    n.add(self.leaf("Wildcard"))
                    break
                n.add(self.leaf("SimpleName", self.ident()))
            self.expect(";")
            cu.add(self.done(n))
        while self.peek().kind is not Kind.EOF:
            if self.accept(";"):
                continue
            cu.add(self.member_declaration())
        return self.done(cu)

    def qualified_names(self, n: _N) -> None:
        n.add(self.leaf("SimpleName", self.ident()))
        while self.at(".") and self.peek(1).kind is Kind.IDENT:
            self.advance()
            n.add(self.leaf("SimpleName", self.ident()))

    def modifiers(self, in_class: bool) -> list[_N]:
        mods = []
        while True:
            t = self.peek()
            if t.text == "@" and t.kind is Kind.OP:
                if self.peek(1).text == "interface":
                    break
                mods.append(self.annotation())
            elif t.kind is Kind.KEYWORD and t.text in MODIFIERS:
                nxt = self.peek(1).text
                if t.text == "default" and (not in_class or nxt in (":", "->")):
                    break
                if t.text in ("synchronized", "static") and nxt in ("(", "{"):
                    break
                mods.append(self.leaf("Modifier"))
            else:
                break
        return mods

    def member_declaration(self) -> _N:
        start = self.peek()
        if self.at("{") or (self.at("static") and self.peek(1).text == "{"):
            kw = self.accept("static")
            n = _N("InitializerDeclaration", start, tok=kw)
            n.add(self.block())
            return self.done(n)
        mods = self.modifiers(in_class=True)
        if self.at("class") or self.at("interface"):
            return self.class_declaration(mods, start)
        if self.at("enum"):
            return self.enum_declaration(mods, start)
        if self.at("@"):
            self.fail("annotation type declarations are not supported")
        type_params = self.type_parameters() if self.at("<") else []
        if self.peek().kind is Kind.IDENT and self.peek(1).text == "(":
            n = _N("ConstructorDeclaration", start)
            for c in mods + type_params:
                n.add(c)
            n.add(self.leaf("SimpleName", self.ident()))
            return self.method_rest(n)
        if self.at("void"):
            n = _N("MethodDeclaration", start, tok=self.advance())
            for c in mods + type_params:
                n.add(c)
            n.add(self.leaf("SimpleName", self.ident()))
            return self.method_rest(n)
        ty = self.type()
        name = self.ident()
        if self.at("("):
            n = _N("MethodDeclaration", start)
            for c in mods + type_params:
                n.add(c)
            n.add(ty)
            n.add(self.leaf("SimpleName", name))
            return self.method_rest(n)
        if type_params:
            self.fail("expected '('")
        n = _N("FieldDeclaration", start)
        for c in mods:
            n.add(c)
        n.add(ty)
        n.add(self.variable_declarator(name))
        while self.accept(","):
            n.add(self.variable_declarator(self.ident()))
        self.expect(";")
        return self.done(n)

    def method_rest(self, n: _N) -> _N:
        self.parameters(n)
        self.skip_dims()
        if self.at("throws"):
            kw = self.advance()
            th = _N("ThrowsClause", kw, tok=kw)
            th.add(self.type())
            while self.accept(","):
                th.add(self.type())
            n.add(self.done(th))
        if self.at("{"):
            n.add(self.block())
        else:
            self.expect(";")
        return self.done(n)

    def parameters(self, n: _N) -> None:
        self.expect("(")
        if not self.at(")"):
            while True:
                n.add(self.parameter())
                if not self.accept(","):
                    break
        self.expect(")")

    def parameter(self) -> _N:
        start = self.peek()
        mods = self.modifiers(in_class=False)
        ty = self.type()
        dots = self.accept("...")
        p = _N("Parameter", start, tok=dots)
        for c in mods:
            p.add(c)
        p.add(ty)
        if self.at("this"):
            p.add(self.leaf("ThisExpr"))
        else:
            p.add(self.leaf("SimpleName", self.ident()))
        self.skip_dims()
        return self.done(p)

    def skip_dims(self) -> None:
        while self.at("[") and self.peek(1).text == "]":
            self.advance()
            self.advance()

    def class_declaration(self, mods: list[_N], start: Lexeme) -> _N:
        kw = self.advance()
        n = _N("ClassOrInterfaceDeclaration", start, tok=kw)
        for c in mods:
            n.add(c)
        n.add(self.leaf("SimpleName", self.ident()))
        if self.at("<"):
            for c in self.type_parameters():
                n.add(c)
        for word, clause in (("extends", "ExtendsClause"), ("implements", "ImplementsClause")):
            if self.at(word):
                k = self.advance()
                cl = _N(clause, k, tok=k)
                cl.add(self.type())
                while self.accept(","):
                    cl.add(self.type())
                n.add(self.done(cl))
        self.class_body(n)
        return self.done(n)

    def class_body(self, n: _N) -> None:
        self.expect("{")
        while not self.accept("}"):
            if self.peek().kind is Kind.EOF:
                self.fail("expected '}'")
            if self.accept(";"):
                continue
            n.add(self.member_declaration())

    def enum_declaration(self, mods: list[_N], start: Lexeme) -> _N:
        kw = self.advance()
        n = _N("EnumDeclaration", start, tok=kw)
        for c in mods:
            n.add(c)
        n.add(self.leaf("SimpleName", self.ident()))
        if self.at("implements"):
            k = self.advance()
            cl = _N("ImplementsClause", k, tok=k)
            cl.add(self.type())
            while self.accept(","):
                cl.add(self.type())
            n.add(self.done(cl))
        self.expect("{")
        while not self.at(";") and not self.at("}"):
            c = _N("EnumConstantDeclaration", self.peek())
            for a in self.modifiers(in_class=False):
                c.add(a)
            c.add(self.leaf("SimpleName", self.ident()))
            if self.at("("):
                self.arguments(c)
            if self.at("{"):
                self.class_body(c)
            n.add(self.done(c))
            if not self.accept(","):
                break
        if self.accept(";"):
            while not self.at("}"):
                if self.peek().kind is Kind.EOF:
                    self.fail("expected '}'")
                if self.accept(";"):
                    continue
                n.add(self.member_declaration())
        self.expect("}")
        return self.done(n)

    def annotation(self) -> _N:
        start = self.expect("@")
        names = [self.leaf("SimpleName", self.ident())]
        while self.at(".") and self.peek(1).kind is Kind.IDENT:
            self.advance()
            names.append(self.leaf("SimpleName", self.ident()))
        if not self.at("("):
            n = _N("MarkerAnnotationExpr", start)
            for c in names:
                n.add(c)
            return self.done(n)
        self.advance()
        if self.at(")"):
            n = _N("MarkerAnnotationExpr", start)
            for c in names:
                n.add(c)
        elif self.peek().kind is Kind.IDENT and self.peek(1).text == "=":
            n = _N("NormalAnnotationExpr", start)
            for c in names:
                n.add(c)
            while True:
                name = self.ident()
                pair = _N("MemberValuePair", name, tok=self.expect("="))
                pair.add(self.leaf("SimpleName", name))
                pair.add(self.element_value())
                n.add(self.done(pair))
                if not self.accept(","):
                    break
        else:
            n = _N("SingleMemberAnnotationExpr", start)
            for c in names:
                n.add(c)
            n.add(self.element_value())
        self.expect(")")
        return self.done(n)

    def element_value(self) -> _N:
        if self.at("@"):
            return self.annotation()
        if self.at("{"):
            lb = self.advance()
            n = _N("ArrayInitializerExpr", lb)
            while not self.at("}"):
                n.add(self.element_value())
                if not self.accept(","):
                    break
            self.expect("}")
            return self.done(n)
        return self.ternary()

    # -- types --------------------------------------------------------------

    def type(self) -> _N:
        t = self.peek()
        if t.kind is Kind.KEYWORD and t.text in PRIMITIVE_TYPES:
            ty = self.leaf("PrimitiveType")
        elif t.kind is Kind.IDENT:
            ty = self.class_type()
        else:
            self.fail("expected type")
        while self.at("[") and self.peek(1).text == "]":
            arr = _N("ArrayType", ty)
            arr.add(ty)
            self.advance()
            self.advance()
            ty = self.done(arr)
        return ty

    def class_type(self) -> _N:
        name = self.ident()
        ty = _N("ClassOrInterfaceType", name, tok=name)
        if self.at("<"):
            self.type_arguments(ty)
        self.done(ty)
        while self.at(".") and self.peek(1).kind is Kind.IDENT:
            self.advance()
            name = self.ident()
            outer = _N("ClassOrInterfaceType", ty, tok=name)
            outer.add(ty)
            if self.at("<"):
                self.type_arguments(outer)
            ty = self.done(outer)
        return ty

    def type_arguments(self, n: _N) -> None:
        self.expect("<")
        if self.accept(">"):
            return
        while True:
            if self.at("?"):
                q = self.advance()
                w = _N("WildcardType", q, tok=q)
                if self.at("extends") or self.at("super"):
                    k = self.advance()
                    b = _N("TypeBound", k, tok=k)
                    b.add(self.type())
                    w.add(self.done(b))
                n.add(self.done(w))
            else:
                n.add(self.type())
            if not self.accept(","):
                break
        self.expect(">")

    def type_parameters(self) -> list[_N]:
        self.expect("<")
        out = []
        while True:
            for _ in self.modifiers(in_class=False):
                pass
            name = self.ident()
            tp = _N("TypeParameter", name, tok=name)
            if self.at("extends"):
                k = self.advance()
                b = _N("TypeBound", k, tok=k)
                b.add(self.type())
                while self.accept("&"):
                    b.add(self.type())
                tp.add(self.done(b))
            out.append(self.done(tp))
            if not self.accept(","):
                break
        self.expect(">")
        return out

    # -- statements -----------------------------------------------------------

    def block(self) -> _N:
        lb = self.expect("{")
        b = _N("Block", lb)
        while not self.at("}"):
            if self.peek().kind is Kind.EOF:
                self.fail("expected '}'")
            b.add(self.block_statement())
        self.advance()
        return self.done(b)

    def block_statement(self) -> _N:
        start = self.peek()
        if start.text in ("class", "interface", "enum", "abstract", "final", "static", "@") and start.kind is not Kind.STRING:
            save = self.pos
            mods = self.modifiers(in_class=False)
            if self.at("class") or self.at("interface") or self.at("enum"):
                st = _N("LocalClassDeclarationStmt", start)
                if self.at("enum"):
                    st.add(self.enum_declaration(mods, start))
                else:
                    st.add(self.class_declaration(mods, start))
                return self.done(st)
            self.pos = save
        if not self.is_yield():
            head = self.declaration_head()
            if head is not None:
                st = _N("ExpressionStmt", start)
                st.add(self.declarators(*head))
                self.expect(";")
                return self.done(st)
        return self.statement()

    def is_yield(self) -> bool:
        t = self.peek()
        if t.kind is not Kind.IDENT or t.text != "yield":
            return False
        nxt = self.peek(1)
        if nxt.kind is Kind.OP:
            return nxt.text in ("(", "-", "+", "!", "~")
        return True

    def declaration_head(self):
        """Try ``[mods] Type Ident`` followed by a declarator continuation.

        Returns ``(start, mods, type)`` positioned at the identifier, or None
        with the position restored.
        """
        t = self.peek()
        if not (t.kind is Kind.IDENT or t.text in PRIMITIVE_TYPES or t.text in ("final", "@")):
            return None
        save = self.pos
        try:
            mods = self.modifiers(in_class=False)
            ty = self.type()
        except ParseError:
            self.pos = save
            return None
        if self.peek().kind is Kind.IDENT and self.peek(1).text in _DECL_FOLLOW:
            return t, mods, ty
        self.pos = save
        return None

    def declarators(self, start, mods, ty) -> _N:
        n = _N("VariableDeclarationExpr", start)
        for c in mods:
            n.add(c)
        n.add(ty)
        n.add(self.variable_declarator(self.ident()))
        while self.accept(","):
            n.add(self.variable_declarator(self.ident()))
        return self.done(n)

    def variable_declarator(self, name: Lexeme) -> _N:
        vd = _N("VariableDeclarator", name)
        vd.add(self.leaf("SimpleName", name))
        self.skip_dims()
        if self.at("="):
            eq = self.advance()
            vd.tok = (eq.text, eq.line, eq.col)
            vd.add(self.array_initializer() if self.at("{") else self.expression())
        return self.done(vd)

    def array_initializer(self) -> _N:
        lb = self.expect("{")
        n = _N("ArrayInitializerExpr", lb)
        while not self.at("}"):
            n.add(self.array_initializer() if self.at("{") else self.expression())
            if not self.accept(","):
                break
        self.expect("}")
        return self.done(n)

    def statement(self) -> _N:
        t = self.peek()
        s = t.text if t.kind in (Kind.KEYWORD, Kind.OP) else None
        if s == "{":
            return self.block()
        if s == ";":
            n = _N("EmptyStmt", t)
            self.advance()
            return self.done(n)
        handler = getattr(self, f"stmt_{s}", None) if s and s.isalpha() else None
        if handler is not None:
            return handler()
        if t.kind is Kind.IDENT and self.peek(1).text == ":" and self.peek(1).kind is Kind.OP:
            n = _N("LabeledStmt", t)
            n.add(self.leaf("SimpleName", self.advance()))
            self.advance()
            n.add(self.statement())
            return self.done(n)
        if self.is_yield():
            n = _N("YieldStmt", t, tok=self.advance())
            n.add(self.expression())
            self.expect(";")
            return self.done(n)
        if s in ("this", "super") and self.peek(1).text == "(":
            n = _N("ExplicitConstructorInvocationStmt", t, tok=self.advance())
            self.arguments(n)
            self.expect(";")
            return self.done(n)
        n = _N("ExpressionStmt", t)
        n.add(self.expression())
        self.expect(";")
        return self.done(n)

    def paren_expression(self) -> _N:
        self.expect("(")
        e = self.expression()
        self.expect(")")
        return e

    def stmt_if(self) -> _N:
        kw = self.advance()
        n = _N("IfStmt", kw, tok=kw)
        n.add(self.paren_expression())
        n.add(self.statement())
        if self.at("else"):
            k = self.advance()
            el = _N("ElseClause", k, tok=k)
            el.add(self.statement())
            n.add(self.done(el))
        return self.done(n)

    def stmt_while(self) -> _N:
        kw = self.advance()
        n = _N("WhileStmt", kw, tok=kw)
        n.add(self.paren_expression())
        n.add(self.statement())
        return self.done(n)

    def stmt_do(self) -> _N:
        kw = self.advance()
        n = _N("DoStmt", kw, tok=kw)
        n.add(self.statement())
        k = self.expect("while")
        cond = _N("DoWhileClause", k, tok=k)
        cond.add(self.paren_expression())
        n.add(self.done(cond))
        self.expect(";")
        return self.done(n)

    def stmt_for(self) -> _N:
        kw = self.advance()
        self.expect("(")
        head = self.declaration_head()
        if head is not None and self.peek(1).text == ":":
            n = _N("ForEachStmt", kw, tok=kw)
            start, mods, ty = head
            decl = _N("VariableDeclarationExpr", start)
            for c in mods:
                decl.add(c)
            decl.add(ty)
            name = self.ident()
            vd = _N("VariableDeclarator", name)
            vd.add(self.leaf("SimpleName", name))
            decl.add(self.done(vd))
            n.add(self.done(decl))
            self.expect(":")
            n.add(self.expression())
            self.expect(")")
            n.add(self.statement())
            return self.done(n)
        n = _N("ForStmt", kw, tok=kw)
        if head is not None:
            n.add(self.declarators(*head))
        elif not self.at(";"):
            n.add(self.expression())
            while self.accept(","):
                n.add(self.expression())
        self.expect(";")
        if not self.at(";"):
            n.add(self.expression())
        self.expect(";")
        if not self.at(")"):
            n.add(self.expression())
            while self.accept(","):
                n.add(self.expression())
        self.expect(")")
        n.add(self.statement())
        return self.done(n)

    def stmt_try(self) -> _N:
        kw = self.advance()
        n = _N("TryStmt", kw, tok=kw)
        if self.accept("("):
            while not self.at(")"):
                head = self.declaration_head()
                if head is not None:
                    n.add(self.declarators(*head))
                else:
                    n.add(self.expression())
                if not self.accept(";"):
                    break
            self.expect(")")
        n.add(self.block())
        while self.at("catch"):
            k = self.advance()
            c = _N("CatchClause", k, tok=k)
            self.expect("(")
            start = self.peek()
            p = _N("Parameter", start)
            for m in self.modifiers(in_class=False):
                p.add(m)
            ty = self.type()
            if self.at("|"):
                u = _N("UnionType", ty)
                u.add(ty)
                while self.accept("|"):
                    u.add(self.type())
                ty = self.done(u)
            p.add(ty)
            p.add(self.leaf("SimpleName", self.ident()))
            c.add(self.done(p))
            self.expect(")")
            c.add(self.block())
            n.add(self.done(c))
        if self.at("finally"):
            k = self.advance()
            f = _N("FinallyClause", k, tok=k)
            f.add(self.block())
            n.add(self.done(f))
        return self.done(n)

    def stmt_switch(self) -> _N:
        return self.switch("SwitchStmt")

    def switch(self, type_name: str) -> _N:
        kw = self.advance()
        n = _N(type_name, kw, tok=kw)
        n.add(self.paren_expression())
        self.expect("{")
        while not self.at("}"):
            t = self.peek()
            if not (self.at("case") or self.at("default")):
                self.fail("expected 'case' or 'default'")
            e = _N("SwitchEntry", t, tok=self.advance())
            if t.text == "case":
                while True:
                    e.add(self.ternary())
                    if not self.accept(","):
                        break
            if self.accept("->"):
                if self.at("{"):
                    e.add(self.block())
                elif self.at("throw"):
                    e.add(self.statement())
                else:
                    st = _N("ExpressionStmt", self.peek())
                    st.add(self.expression())
                    self.expect(";")
                    e.add(self.done(st))
            else:
                self.expect(":")
                while not (self.at("case") or self.at("default") or self.at("}")):
                    if self.peek().kind is Kind.EOF:
                        self.fail("expected '}'")
                    e.add(self.block_statement())
            n.add(self.done(e))
        self.advance()
        return self.done(n)

    def stmt_return(self) -> _N:
        kw = self.advance()
        n = _N("ReturnStmt", kw, tok=kw)
        if not self.at(";"):
            n.add(self.expression())
        self.expect(";")
        return self.done(n)

    def _jump(self, type_name: str) -> _N:
        kw = self.advance()
        n = _N(type_name, kw, tok=kw)
        if self.peek().kind is Kind.IDENT:
            n.add(self.leaf("SimpleName"))
        self.expect(";")
        return self.done(n)

    def stmt_break(self) -> _N:
        return self._jump("BreakStmt")

    def stmt_continue(self) -> _N:
        return self._jump("ContinueStmt")

    def stmt_throw(self) -> _N:
        kw = self.advance()
        n = _N("ThrowStmt", kw, tok=kw)
        n.add(self.expression())
        self.expect(";")
        return self.done(n)

    def stmt_synchronized(self) -> _N:
        kw = self.advance()
        n = _N("SynchronizedStmt", kw, tok=kw)
        n.add(self.paren_expression())
        n.add(self.block())
        return self.done(n)

    def stmt_assert(self) -> _N:
        kw = self.advance()
        n = _N("AssertStmt", kw, tok=kw)
        n.add(self.expression())
        if self.accept(":"):
            n.add(self.expression())
        self.expect(";")
        return self.done(n)

    # -- expressions ----------------------------------------------------------

    def expression(self) -> _N:
        if self.at_lambda():
            return self.lambda_expr()
        lhs = self.ternary()
        op, k = self.operator_here()
        if op in ASSIGN_OPERATORS:
            t = self.peek()
            n = _N(ASSIGN_OPERATORS[op], lhs, tok=(op, t.line, t.col))
            self.pos += k
            n.add(lhs)
            n.add(self.expression())
            return self.done(n)
        return lhs

    def operator_here(self) -> tuple[str | None, int]:
        """Operator at the cursor, re-joining adjacent '>' and '=' lexemes."""
        t = self.peek()
        if t.kind is Kind.KEYWORD and t.text == "instanceof":
            return t.text, 1
        if t.kind is not Kind.OP:
            return None, 0
        if t.text != ">":
            return t.text, 1
        text, k = ">", 1
        while k < 3:
            a, b = self.peek(k - 1), self.peek(k)
            if b.text == ">" and b.kind is Kind.OP and a.adjacent_to(b):
                text += ">"
                k += 1
            else:
                break
        a, b = self.peek(k - 1), self.peek(k)
        if b.text == "=" and b.kind is Kind.OP and a.adjacent_to(b):
            text += "="
            k += 1
        return text, k

    def at_lambda(self) -> bool:
        t = self.peek()
        if t.kind is Kind.IDENT:
            return self.peek(1).text == "->"
        if not self.at("("):
            return False
        depth = 0
        i = self.pos
        while i < len(self.toks):
            tx = self.toks[i]
            if tx.kind is Kind.OP:
                if tx.text == "(":
                    depth += 1
                elif tx.text == ")":
                    depth -= 1
                    if depth == 0:
                        nxt = self.toks[min(i + 1, len(self.toks) - 1)]
                        return nxt.text == "->" and nxt.kind is Kind.OP
            elif tx.kind is Kind.EOF:
                return False
            i += 1
        return False

    def lambda_expr(self) -> _N:
        start = self.peek()
        params = []
        if start.kind is Kind.IDENT:
            p = _N("Parameter", start)
            p.add(self.leaf("SimpleName", self.advance()))
            params.append(self.done(p))
        else:
            self.expect("(")
            while not self.at(")"):
                t = self.peek()
                if t.kind is Kind.IDENT and self.peek(1).text in (",", ")"):
                    p = _N("Parameter", t)
                    p.add(self.leaf("SimpleName", self.advance()))
                    params.append(self.done(p))
                else:
                    params.append(self.parameter())
                if not self.accept(","):
                    break
            self.expect(")")
        n = _N("LambdaExpr", start, tok=self.expect("->"))
        for p in params:
            n.add(p)
        n.add(self.block() if self.at("{") else self.expression())
        return self.done(n)

    def ternary(self) -> _N:
        cond = self.binary(1)
        if not self.at("?"):
            return cond
        n = _N("ConditionalExpr", cond, tok=self.advance())
        n.add(cond)
        n.add(self.expression())
        self.expect(":")
        n.add(self.lambda_expr() if self.at_lambda() else self.ternary())
        return self.done(n)

    def binary(self, min_prec: int) -> _N:
        left = self.unary()
        while True:
            op, k = self.operator_here()
            prec = BINARY_PRECEDENCE.get(op)
            if prec is None or prec < min_prec:
                return left
            t = self.peek()
            if op == "instanceof":
                n = _N("InstanceOfExpr", left, tok=self.advance())
                n.add(left)
                self.accept("final")
                n.add(self.type())
                if self.peek().kind is Kind.IDENT:
                    n.add(self.leaf("SimpleName"))
                left = self.done(n)
                continue
            n = _N(BINARY_OPERATORS[op], left, tok=(op, t.line, t.col))
            self.pos += k
            n.add(left)
            n.add(self.binary(prec + 1))
            left = self.done(n)

    _PREFIX = {
        "++": "PreIncrement",
        "--": "PreDecrement",
        "+": "UnaryPlus",
        "-": "UnaryMinus",
        "!": "LogicalComplement",
        "~": "BitwiseComplement",
    }

    def unary(self) -> _N:
        t = self.peek()
        if t.kind is Kind.OP and t.text in self._PREFIX:
            n = _N(self._PREFIX[t.text], t, tok=self.advance())
            n.add(self.unary())
            return self.done(n)
        if self.at("(") and self.is_cast():
            n = _N("CastExpr", self.advance())
            n.add(self.type())
            while self.accept("&"):
                n.add(self.type())
            self.expect(")")
            n.add(self.unary())
            return self.done(n)
        e = self.selectors(self.primary())
        while self.at("++") or self.at("--"):
            t = self.peek()
            n = _N("PostIncrement" if t.text == "++" else "PostDecrement", e, tok=self.advance())
            n.add(e)
            e = self.done(n)
        return e

    def is_cast(self) -> bool:
        save = self.pos
        try:
            self.advance()
            primitive = self.peek().text in PRIMITIVE_TYPES
            self.type()
            while self.accept("&"):
                self.type()
            if not self.at(")"):
                return False
            if primitive:
                return True
            nxt = self.peek(1)
            return nxt.kind in _CAST_FOLLOW_KINDS or (
                nxt.kind in (Kind.OP, Kind.KEYWORD) and nxt.text in _CAST_FOLLOW
            )
        except ParseError:
            return False
        finally:
            self.pos = save

    def arguments(self, n: _N) -> None:
        self.expect("(")
        if not self.at(")"):
            while True:
                n.add(self.expression())
                if not self.accept(","):
                    break
        self.expect(")")

    def primary(self) -> _N:
        t = self.peek()
        if t.kind in LITERAL_TYPES:
            return self.leaf(LITERAL_TYPES[t.kind])
        if t.kind is Kind.KEYWORD:
            if t.text in ("true", "false"):
                return self.leaf("BooleanLiteral")
            if t.text == "null":
                return self.leaf("NullLiteral")
            if t.text == "this":
                return self.leaf("ThisExpr")
            if t.text == "super":
                return self.leaf("SuperExpr")
            if t.text == "new":
                return self.creator()
            if t.text == "switch":
                return self.switch("SwitchExpr")
            if t.text in PRIMITIVE_TYPES or t.text == "void":
                ty = self.leaf("VoidType") if t.text == "void" else self.type()
                if self.at("::"):
                    return ty
                self.expect(".")
                n = _N("ClassExpr", ty, tok=self.expect("class"))
                n.add(ty)
                return self.done(n)
        if t.kind is Kind.IDENT:
            if self.peek(1).text == "(":
                n = _N("MethodCallExpr", t)
                n.add(self.leaf("SimpleName"))
                self.arguments(n)
                return self.done(n)
            return self.leaf("NameExpr")
        if self.at("("):
            n = _N("EnclosedExpr", self.advance())
            n.add(self.expression())
            self.expect(")")
            return self.done(n)
        self.fail("expected expression")

    def selectors(self, e: _N) -> _N:
        while True:
            if self.at("."):
                nxt = self.peek(1)
                if nxt.kind is Kind.IDENT:
                    self.advance()
                    name = self.leaf("SimpleName")
                    if self.at("("):
                        n = _N("MethodCallExpr", e).add(e).add(name)
                        self.arguments(n)
                    else:
                        n = _N("FieldAccessExpr", e).add(e).add(name)
                    e = self.done(n)
                elif nxt.text == "<":
                    self.advance()
                    n = _N("MethodCallExpr", e).add(e)
                    self.type_arguments(n)
                    n.add(self.leaf("SimpleName", self.ident()))
                    self.arguments(n)
                    e = self.done(n)
                elif nxt.text == "new":
                    self.advance()
                    c = self.creator()
                    c.children.insert(0, e)
                    c.start = e.start
                    e = c
                elif nxt.text in ("this", "super", "class"):
                    self.advance()
                    kw = self.advance()
                    type_name = {"this": "ThisExpr", "super": "SuperExpr", "class": "ClassExpr"}[kw.text]
                    e = self.done(_N(type_name, e, tok=kw).add(e))
                else:
                    self.fail("expected member name", nxt)
            elif self.at("["):
                if self.peek(1).text == "]":
                    arr = _N("ArrayType", e).add(e)
                    self.advance()
                    self.advance()
                    e = self.done(arr)
                    continue
                n = _N("ArrayAccessExpr", e).add(e)
                self.advance()
                n.add(self.expression())
                self.expect("]")
                e = self.done(n)
            elif self.at("::"):
                n = _N("MethodReferenceExpr", e, tok=self.advance()).add(e)
                if self.at("<"):
                    self.type_arguments(n)
                if self.at("new"):
                    n.add(self.leaf("SimpleName"))
                else:
                    n.add(self.leaf("SimpleName", self.ident()))
                e = self.done(n)
            else:
                return e

    def creator(self) -> _N:
        kw = self.expect("new")
        holder = _N("ObjectCreationExpr", kw, tok=kw)
        if self.at("<"):
            self.type_arguments(holder)
        t = self.peek()
        if t.kind is Kind.KEYWORD and t.text in PRIMITIVE_TYPES:
            ty = self.leaf("PrimitiveType")
        else:
            ty = self.class_type()
        if self.at("["):
            n = _N("ArrayCreationExpr", kw, tok=kw)
            n.children = holder.children
            n.add(ty)
            while self.at("["):
                lvl = _N("ArrayCreationLevel", self.advance())
                if not self.at("]"):
                    lvl.add(self.expression())
                self.expect("]")
                n.add(self.done(lvl))
            if self.at("{"):
                n.add(self.array_initializer())
            return self.done(n)
        holder.add(ty)
        self.arguments(holder)
        if self.at("{"):
            self.class_body(holder)
        return self.done(holder)


def _freeze(root: _N, source: str, snippet_id: str) -> SyntaxTree:
    types: list[str] = []
    spans: list[Span] = []
    parents: list[int | None] = []
    tokens: dict[int, tuple[str, Span]] = {}
    stack: list[tuple[_N, int | None]] = [(root, None)]
    while stack:
        n, parent = stack.pop()
        nid = len(types)
        types.append(n.type)
        spans.append(Span(n.start[0], n.start[1], n.end[0], n.end[1]))
        parents.append(parent)
        if n.tok is not None:
            text, line, col = n.tok
            tokens[nid] = (text, Span(line, col, line, col + len(text)))
        for c in reversed(n.children):
            stack.append((c, nid))
    return SyntaxTree.build(types, spans, parents, tokens, source=source, snippet_id=snippet_id)


def parse_source(snippet: SourceSnippet | str) -> SyntaxTree:
    """Parse a Java compilation unit, or bare class members, into a tree.

    Raises ``ParseError`` (with 0-based ``line``/``col``) on invalid syntax or
    on unnormalized tab characters.
    """
    if isinstance(snippet, str):
        snippet = SourceSnippet("", snippet)
    text = snippet.text
    tab = text.find("\t")
    if tab >= 0:
        line = text.count("\n", 0, tab)
        col = tab - (text.rfind("\n", 0, tab) + 1)
        raise ParseError("tab character; normalize indentation first", line, col)
    parser = _Parser(text)
    try:
        root = parser.compilation_unit()
    except RecursionError:
        t = parser.peek()
        raise ParseError("nesting too deep", t.line, t.col) from None
    return _freeze(root, text, snippet.id)
