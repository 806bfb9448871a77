"""
Exception hierarchy shared by the library and the command line front end.
"""

from typing import Optional


class TropicalError(Exception):
    """Base class for every error raised by the toolkit."""


class DimensionError(TropicalError, ValueError):
    """Operand shapes are incompatible."""


class DomainError(TropicalError, ValueError):
    """A value lies outside the domain of an operation (e.g. +inf on the max-plus path)."""


class InfeasibleError(TropicalError):
    """No permutation has finite weight, so no scaling exists."""


class OracleSizeError(TropicalError):
    """A brute-force oracle was asked for a matrix above its size guard."""


class ParseError(TropicalError):
    """Malformed matrix or equation text."""

    def __init__(self, message: str, source: str = '<text>', line: Optional[int] = None,
                 column: Optional[int] = None):
        self.message = message
        self.source = source
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self) -> str:
        location = self.source
        if self.line is not None:
            location += f":{self.line}"
            if self.column is not None:
                location += f":{self.column}"
        return f"{location}: {self.message}"
