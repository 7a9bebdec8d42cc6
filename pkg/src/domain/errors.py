"""
Domain error hierarchy.
"""
from typing import Optional


class DefspaceError(Exception):
    """Base class for every error raised by the library."""


class GraphFormatError(DefspaceError):
    """Syntax error in a defining-graph document."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class GraphValidationError(DefspaceError):
    """A defining graph breaks one of its invariants."""


class ConstraintError(DefspaceError):
    """Input is valid but outside the class a computation accepts."""


class SplittingError(DefspaceError):
    """Tree data that cannot be read as a splitting of the base graph."""


class MoveError(DefspaceError):
    """A collapse, expansion or slide whose preconditions fail."""


class EnumerationLimitError(DefspaceError):
    """A search hit its configured cap."""

    def __init__(self, message: str, found: int, cap: int):
        self.found = found
        self.cap = cap
        super().__init__(f"{message} (found {found}, cap {cap})")
