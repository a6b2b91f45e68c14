"""Exception hierarchy shared across the package."""


class AgpickError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(AgpickError):
    """Matrix or tuple shapes are inconsistent with the operation."""


class HermitianError(AgpickError):
    """Input is not Hermitian within the working tolerance."""


class ParameterError(AgpickError):
    """A named parameter violates its documented constraint."""


class EvaluationError(AgpickError):
    """Evaluation hit a pole or an otherwise undefined point."""


class CommutativityError(AgpickError):
    """A matrix tuple fails the pairwise-commutation check."""


class SpectrumError(AgpickError):
    """A denominator is singular at the given matrix tuple."""


class DuplicatePointError(AgpickError):
    """Interpolation nodes must be pairwise distinct."""


class DomainError(AgpickError):
    """A point lies outside the domain; carries the offending margin."""

    def __init__(self, message, margin=None):
        super().__init__(message)
        self.margin = margin


class AdmissibilityError(AgpickError):
    """A tuple violates a contraction constraint; names the block."""


class InconclusiveError(AgpickError):
    """Solver hit its iteration cap while still making progress.

    Carries the best iterate so the caller can retry with a larger cap.
    """

    def __init__(self, message, best=None, gap=None, iterations=None):
        super().__init__(message)
        self.best = best
        self.gap = gap
        self.iterations = iterations


class SchemaError(AgpickError):
    """An input file does not match the documented JSON schema."""
