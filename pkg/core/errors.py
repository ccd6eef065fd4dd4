"""
Errors Module

Exception hierarchy shared by the exact and numeric layers.
"""

from typing import Optional


class QDeformError(Exception):
    """Base class for every error raised by the library."""


class DivisionByZeroError(QDeformError):
    """Division by the zero rational function or zero rational number."""


class SubstitutionError(QDeformError):
    """A substitution made a denominator vanish identically."""


class CompositionError(QDeformError):
    """A composition landed identically on a pole."""


class ModSquareError(QDeformError):
    """An element has no image in (or no inverse in) Q[q]/((q-1)^2)."""


class ContinuedFractionError(QDeformError):
    """Input that has no even continued fraction, such as 0/0."""


class PreconditionError(QDeformError):
    """An operation was called outside its documented domain."""


class FlowBranchError(QDeformError):
    """The branch path of a fractional-power flow met the singularity."""


class ParseError(QDeformError):
    """Malformed textual input; remembers where parsing stopped."""

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
