"""Java lexer producing positioned lexemes.

Comments and whitespace are skipped. ``>`` is always emitted as a single
character so that nested generics (``List<List<T>>``) need no token
splitting; the parser re-joins adjacent ``>`` / ``=`` into shift and
comparison operators.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from codeattn.errors import ParseError

KEYWORDS = frozenset(
    """abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while true false null""".split()
)

PRIMITIVE_TYPES = frozenset("boolean byte char short int long float double".split())

# longest first; '>' deliberately absent from multi-char operators
_OPERATORS = [
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<",
    "(", ")", "{", "}", "[", "]", ";", ",", ".", "@", "=", ">", "<", "!",
    "~", "?", ":", "+", "-", "*", "/", "&", "|", "^", "%",
]


class Kind(enum.Enum):
    IDENT = "ident"
    KEYWORD = "keyword"
    INT = "int"
    LONG = "long"
    FLOAT = "float"
    CHAR = "char"
    STRING = "string"
    OP = "op"
    EOF = "eof"


@dataclass(frozen=True)
class Lexeme:
    kind: Kind
    text: str
    line: int
    col: int

    @property
    def end_col(self) -> int:
        return self.col + len(self.text)

    def adjacent_to(self, other: "Lexeme") -> bool:
        """True if ``other`` starts exactly where this lexeme ends."""
        return other.line == self.line and other.col == self.end_col


_HEX = r"0[xX][0-9a-fA-F](?:[0-9a-fA-F_]*[0-9a-fA-F])?"
_BIN = r"0[bB][01](?:[01_]*[01])?"
_DEC = r"[0-9](?:[0-9_]*[0-9])?"
_EXP = r"[eE][+-]?" + _DEC
_FLOAT_RE = re.compile(
    rf"(?:{_DEC}\.(?:{_DEC})?(?:{_EXP})?[fFdD]?"
    rf"|\.{_DEC}(?:{_EXP})?[fFdD]?"
    rf"|{_DEC}{_EXP}[fFdD]?"
    rf"|{_DEC}[fFdD])"
)
_INT_RE = re.compile(rf"(?:{_HEX}|{_BIN}|{_DEC})([lL]?)")
_IDENT_TAIL_RE = re.compile(r"[\w$]*", re.UNICODE)


def tokenize(text: str) -> list[Lexeme]:
    """Split Java source into lexemes, ending with an EOF lexeme."""
    out: list[Lexeme] = []
    i, line, col = 0, 0, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 0
            continue
        if ch in " \r\f\t":
            i += 1
            col += 1
            continue
        if text.startswith("//", i):
            j = text.find("\n", i)
            j = n if j < 0 else j
            col += j - i
            i = j
            continue
        if text.startswith("/*", i):
            j = text.find("*/", i + 2)
            if j < 0:
                raise ParseError("unterminated comment", line, col)
            body = text[i:j + 2]
            nl = body.count("\n")
            if nl:
                line += nl
                col = len(body) - body.rfind("\n") - 1
            else:
                col += len(body)
            i = j + 2
            continue

        if ch == '"':
            if text.startswith('"""', i):
                raise ParseError("text blocks are not supported", line, col)
            j = _scan_quoted(text, i, '"', line, col)
            out.append(Lexeme(Kind.STRING, text[i:j], line, col))
        elif ch == "'":
            j = _scan_quoted(text, i, "'", line, col)
            out.append(Lexeme(Kind.CHAR, text[i:j], line, col))
        elif ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            m = _FLOAT_RE.match(text, i)
            mi = _INT_RE.match(text, i)
            if m and (not mi or m.end() >= mi.end()) and not _is_hex_prefix(text, i):
                j = m.end()
                kind = Kind.FLOAT
            elif mi:
                j = mi.end()
                kind = Kind.LONG if mi.group(1) else Kind.INT
            else:  # pragma: no cover - a digit always matches _DEC
                raise ParseError("bad numeric literal", line, col)
            if j < n and (text[j].isalnum() or text[j] == "_"):
                raise ParseError("bad numeric literal", line, col)
            out.append(Lexeme(kind, text[i:j], line, col))
        elif ch.isalpha() or ch in "_$":
            m = _IDENT_TAIL_RE.match(text, i + 1)
            j = m.end()
            word = text[i:j]
            kind = Kind.KEYWORD if word in KEYWORDS else Kind.IDENT
            out.append(Lexeme(kind, word, line, col))
        else:
            for op in _OPERATORS:
                if text.startswith(op, i):
                    j = i + len(op)
                    out.append(Lexeme(Kind.OP, op, line, col))
                    break
            else:
                raise ParseError(f"unexpected character {ch!r}", line, col)
        col += j - i
        i = j
    out.append(Lexeme(Kind.EOF, "", line, col))
    return out


def _is_hex_prefix(text: str, i: int) -> bool:
    return text.startswith(("0x", "0X", "0b", "0B"), i)


def _scan_quoted(text: str, i: int, quote: str, line: int, col: int) -> int:
    j = i + 1
    n = len(text)
    while j < n:
        c = text[j]
        if c == "\\":
            j += 2
            continue
        if c == "\n":
            break
        if c == quote:
            return j + 1
        j += 1
    what = "string" if quote == '"' else "character"
    raise ParseError(f"unterminated {what} literal", line, col)
