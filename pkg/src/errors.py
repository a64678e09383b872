"""Exception hierarchy shared by the geometry, solver, obstruction and CLI layers."""

from __future__ import annotations


class HamSandwichError(Exception):
    """Root of every error raised by this package."""


class ZeroCovector(HamSandwichError, ValueError):
    """A linear form (or direction) with all coordinates zero."""


class DimensionMismatch(HamSandwichError, ValueError):
    pass


class NotExactInput(HamSandwichError, ValueError):
    """A value that cannot be read as an exact rational."""


class WrongDimension(HamSandwichError, ValueError):
    pass


class WrongMode(HamSandwichError, ValueError):
    pass


class Infeasible(HamSandwichError):
    """No common x exists for the given per-family intervals."""


class NonUnitLeadingTerm(HamSandwichError, ValueError):
    pass


class GradingError(HamSandwichError, ValueError):
    """A Stiefel-Whitney class with content outside its own degree."""


class ClassParseError(HamSandwichError, ValueError):
    pass


class InstanceFormatError(HamSandwichError, ValueError):
    """Malformed instance or solution document."""


class InvalidMeasure(HamSandwichError, ValueError):
    """An empty family or a nonpositive weight."""
