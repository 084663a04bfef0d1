"""Exception hierarchy shared by all ortholab modules."""


class OrtholabError(Exception):
    """Base class for every error raised by this package."""


class DomainError(OrtholabError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class DegenerateConfigurationError(DomainError):
    """Boundary points coincide, so the requested invariant is undefined."""


class BranchGapError(DomainError):
    """A real inverse of the rational map f does not exist at this value.

    Raised for values strictly between the two critical values of f, where
    the quadratic defining g+ and g- has a negative discriminant.
    """


class PoleError(DomainError):
    """Evaluation requested at a pole."""


class QuadratureError(OrtholabError, ArithmeticError):
    """Numerical integration failed to reach the requested tolerance.

    Attributes
    ----------
    value : float
        Best available approximation.
    estimate : float
        Achieved absolute error estimate.
    """

    def __init__(self, message, value=float("nan"), estimate=float("inf")):
        super().__init__(f"{message} (value={value!r}, error estimate={estimate!r})")
        self.value = value
        self.estimate = estimate


class ConsistencyError(OrtholabError, ArithmeticError):
    """Two mathematically equal evaluations of one quantity disagree."""
