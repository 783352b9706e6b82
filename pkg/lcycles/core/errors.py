"""
lcycles/core/errors.py
Exception hierarchy shared by the library and the CLI
"""

from typing import Optional


class LcyclesError(Exception):
    """Base class for all lcycles errors"""


class GraphFormatError(LcyclesError, ValueError):
    """Malformed graph text; carries the 1-based line number when known"""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        self.reason = message
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class ArgumentError(LcyclesError, ValueError):
    """Precondition violated by a caller (bad k, unknown node, ...)"""


class SearchInvariantError(LcyclesError, RuntimeError):
    """An emitted cycle failed validation - indicates a bug in the search"""
