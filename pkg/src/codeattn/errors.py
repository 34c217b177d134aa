"""Exception types shared across the pipeline."""

from __future__ import annotations


class CodeAttnError(Exception):
    """Base class for all errors raised by codeattn."""


class ParseError(CodeAttnError):
    """Invalid Java syntax. ``line`` and ``col`` are 0-based."""

    def __init__(self, message: str, line: int, col: int):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(f"{line + 1}:{col + 1}: {message}")


class EncodingError(CodeAttnError):
    """Source bytes are not valid UTF-8."""


class UnknownNode(CodeAttnError, KeyError):
    """Node id not present in the tree."""

    def __str__(self) -> str:  # KeyError repr-quotes its argument
        return Exception.__str__(self)


class FormatError(CodeAttnError, ValueError):
    """Malformed input file. ``line`` is 1-based, or None when not line-specific."""

    def __init__(self, message: str, line: int | None = None):
        self.message = message
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class EmptyInput(CodeAttnError, ValueError):
    pass


class LayoutOverflow(CodeAttnError, ValueError):
    pass


class BadDownsample(CodeAttnError, ValueError):
    pass


class DegenerateGaze(CodeAttnError, ValueError):
    """G+ or G- sums to zero, so TPR or FPR is undefined."""


class MalformedCurve(CodeAttnError, ValueError):
    pass


class InsufficientSnippets(CodeAttnError, ValueError):
    pass


class ConfigError(CodeAttnError, ValueError):
    pass
