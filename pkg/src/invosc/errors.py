"""Exception types raised by the library."""


class DomainError(ValueError):
    """Argument outside the documented domain of an operation."""


class PoleError(DomainError):
    """Evaluation at a pole (e.g. the gamma function at a non-positive integer)."""


class CapExceededError(ValueError):
    """A documented size cap (hypergeometric degree, Fock index) was exceeded."""


class PreconditionError(ValueError):
    """Input violates an identity it is required to satisfy."""


class ConvergenceError(ArithmeticError):
    """An iterative evaluation failed to reach its tolerance."""


class StepUnderflowError(ArithmeticError):
    """The ODE integrator needed a step below its minimum size."""


class QuadratureError(ArithmeticError):
    """Adaptive quadrature did not converge within its panel budget."""
