"""
Exception hierarchy for hyc.
"""


class HycError(Exception):
    """Base class for all input and construction errors."""


class ParseError(HycError):
    """Syntax error in one of the text formats."""

    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        self.line = line
        self.column = column
        location = f"line {line}, column {column}: " if line else ""
        super().__init__(f"{location}{message}")


class HypergraphError(HycError):
    """A hypergraph violates its structural invariants."""


class TransformError(HycError):
    """A rewrite references missing vertices or is ill-formed."""


class DiagramError(HycError):
    """A diagram has dangling references or non-total spectrum maps."""


class GameError(HycError):
    """A game is malformed."""


class RepresentationError(HycError):
    """Matrices of a representation have incompatible shapes."""


class MomentProblemError(HycError):
    """A moment relaxation was requested with invalid parameters."""
