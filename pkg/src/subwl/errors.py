"""Exception types raised across the package."""

from __future__ import annotations


class SubWLError(Exception):
    """Base class for all library errors."""


class ParseError(SubWLError, ValueError):
    """Malformed input text. ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GraphFormatError(ParseError):
    """Invalid graph6 data."""


class ValidationError(SubWLError, ValueError):
    pass


class CapacityError(SubWLError, RuntimeError):
    pass


class DomainError(SubWLError, ValueError):
    pass


class InternalConsistencyError(SubWLError, RuntimeError):
    pass
