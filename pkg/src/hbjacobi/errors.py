"""Exception hierarchy shared by all modules."""


class HBJacobiError(Exception):
    """Base class for all library errors."""


class PreconditionError(HBJacobiError, ValueError):
    """Input violates a documented precondition (bad degrees, wrong half-plane,
    angle sum out of range, interlacing violation, ...)."""


class NumericalError(HBJacobiError, RuntimeError):
    """A computation that should succeed on valid input broke down numerically
    (residual above tolerance, internal consistency check failed)."""


class ConvergenceError(NumericalError):
    """An iterative solver hit its iteration cap before converging."""
