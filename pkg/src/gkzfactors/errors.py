"""Error types shared across the library."""


class GKZError(Exception):
    """Base class for library errors."""


class DimensionMismatchError(GKZError):
    """Vectors or matrices with incompatible dimensions."""


class DomainError(GKZError):
    """Input outside the documented domain of an operation."""


class NonPointedError(GKZError):
    """A membership query whose reduced cone is not pointed."""


class ComputationLimitError(GKZError):
    """An explicit computation budget was exceeded; never a silent wrong answer."""
