"""Exception hierarchy shared across the package."""


class DiagScaleError(Exception):
    """Base class for all package errors."""


class InvalidDimension(DiagScaleError):
    """Dimension too small, or incompatible with the requested model."""


class InvalidOmega(DiagScaleError):
    """Spike strength must satisfy omega > -1."""


class NotPSD(DiagScaleError):
    """Matrix is not positive semidefinite within tolerance."""


class Unsupported(DiagScaleError):
    """Operation not defined for this covariance model."""


class DomainError(DiagScaleError):
    """Argument outside the mathematical domain of the function."""


class NotStrictlyCopositive(DiagScaleError):
    """No scaling solution exists: the matrix is not strictly copositive."""


class NumericalFailure(DiagScaleError):
    """Solver hit the iteration cap without converging or diverging."""


class ZeroVector(DiagScaleError):
    """Cosine similarity is undefined for a zero vector."""


class EmptySample(DiagScaleError):
    """Summary statistics require at least one sample."""
