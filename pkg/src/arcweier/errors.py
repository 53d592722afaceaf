"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class ArcWeierError(Exception):
    """Base class for library errors."""


class ContextError(ArcWeierError, ValueError):
    """Operands live in different rings, fields or truncations."""


class ParseError(ArcWeierError, ValueError):
    """Malformed polynomial text or input file."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class NotAUnitError(ArcWeierError, ArithmeticError):
    """Inversion of an element whose reduction vanishes."""


class OrderError(ArcWeierError, ValueError):
    """A t-order could not be certified, or disagrees with what the caller expects."""


class Obstruction(ArcWeierError):
    """A divisibility check failed: the requested lift or preimage does not exist."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidPoint(ArcWeierError, ValueError):
    """A point does not satisfy the presentation it was claimed to lie on."""


class BudgetExceeded(ArcWeierError):
    """Enumeration would visit more assignments than allowed."""
