"""Exception hierarchy shared by every qdelta module."""


class QDeltaError(Exception):
    """Base class for all errors raised by qdelta."""


class DomainError(QDeltaError, ValueError):
    """A parameter lies outside the range an operation is valid for."""


class BranchCutError(QDeltaError, ArithmeticError):
    """The base of a complex power landed on the closed negative real axis."""


class QuadratureFailure(QDeltaError, ArithmeticError):
    """Adaptive integration exhausted its budget before meeting tolerance."""


class NonFiniteIntegrand(QuadratureFailure):
    """The integrand returned NaN or Inf at a sample point."""


class TailDivergence(QuadratureFailure):
    """The decay probe on an unbounded range did not find decay."""


class ProjectionFailure(QDeltaError, ArithmeticError):
    """Constraint projection of a perturbed density did not converge."""


class SingularOrigin(QDeltaError, ArithmeticError):
    """A mixture integrand is not integrable at the origin."""
