"""Exception types raised across the library."""


class SuperquadError(Exception):
    """Base class for all library errors."""


class AsymmetryError(SuperquadError, ValueError):
    """Input matrix is too far from symmetric to be symmetrized silently."""


class DimensionError(SuperquadError, ValueError):
    """Operands have incompatible shapes."""


class ComputationError(SuperquadError, RuntimeError):
    """A numerical routine (eigensolver, SVD) failed to converge."""


class DomainError(SuperquadError, ValueError):
    """A scalar argument or matrix eigenvalue lies outside a function's domain."""


class NotPsdError(SuperquadError, ValueError):
    """Matrix required to be positive semi-definite has a negative eigenvalue.

    Attributes
    ----------
    margin : float
        The offending (most negative) eigenvalue.
    """

    def __init__(self, message, margin=None):
        super().__init__(message)
        self.margin = margin


class OrderError(SuperquadError, ValueError):
    """Eigenvalue-order precondition failed.

    Attributes
    ----------
    index : int or None
        First index j (0-based) at which lambda_j(h) > lambda_j(k) + tol.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ParameterError(SuperquadError, ValueError):
    """A parameter is outside its admissible range."""


class IntervalError(SuperquadError, ValueError):
    """An interval [m, M] is empty or degenerate where it must not be."""


class RootBracketError(SuperquadError, RuntimeError):
    """The scan of the root equation found no sign change."""


class SingularConstantError(SuperquadError, ArithmeticError):
    """A sharpness constant is undefined (division by a vanishing quantity)."""


class SingularityError(SuperquadError, ValueError):
    """A matrix required to be invertible is numerically singular."""


class ClassificationError(SuperquadError, ValueError):
    """A scalar function lacks the class flags a bound requires."""


class UnitalityError(SuperquadError, ValueError):
    """A positive map is not unital within tolerance.

    Attributes
    ----------
    residual : float
        Frobenius norm of c^T c + d^T d - I.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class GenerationError(SuperquadError, RuntimeError):
    """A rejection sampler exhausted its attempt budget."""
