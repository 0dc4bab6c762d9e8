"""
Exception hierarchy shared by the library, the CLI and the HTTP routes.
"""

from typing import Optional, Tuple


def locate(text: str, offset: int) -> Tuple[int, int]:
    """1-based (line, column) of a character offset."""
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


class WeilError(Exception):
    """Base class for every error raised by the package."""

    exit_code = 2

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class InputError(WeilError, ValueError):
    """Malformed input, boundary mismatch or a cone that does not commute."""

    exit_code = 2


class DslError(InputError):
    """Base for DSL errors; carries the offending text and offset when known."""

    def __init__(self, message: str, text: Optional[str] = None, offset: Optional[int] = None):
        self.text = text
        self.offset = offset
        self.line: Optional[int] = None
        self.column: Optional[int] = None
        if text is not None and offset is not None:
            self.line, self.column = locate(text, offset)
            message = f"{message} at line {self.line}, column {self.column}"
        super().__init__(message)

    def excerpt(self) -> Optional[str]:
        if self.text is None or self.offset is None:
            return None
        line_start = self.text.rfind("\n", 0, self.offset) + 1
        line_end = self.text.find("\n", self.offset)
        if line_end == -1:
            line_end = len(self.text)
        return self.text[line_start:line_end] + "\n" + " " * (self.column - 1) + "^"


class DslSyntaxError(DslError):
    """A DSL text that does not match the grammar."""


class DslSemanticError(DslError):
    """Well-formed DSL text that denotes no valid value."""

    KINDS = ("duplicate", "missing", "range", "hom", "exponent", "ambient")

    def __init__(self, kind: str, message: str, text: Optional[str] = None, offset: Optional[int] = None):
        self.kind = kind
        super().__init__(f"{kind}: {message}", text, offset)


class AlgorithmError(WeilError):
    """An internal consistency check failed; should be unreachable."""

    exit_code = 1


class StructuralViolation(AlgorithmError):
    """A complement summand of alpha without an annihilating pair."""
