"""Exception hierarchy shared across the package."""


class WishartError(Exception):
    """Base class for all errors raised by wishart_cf."""


class DimensionError(WishartError, ValueError):
    pass


class SingularMatrixError(WishartError, ArithmeticError):
    pass


class ConvergenceError(WishartError, RuntimeError):
    pass


class NotPSDError(WishartError, ValueError):
    pass


class StripViolationError(SingularMatrixError):
    """A point left the strip where the real part exceeds -I/2."""


class QuadratureError(WishartError, RuntimeError):
    pass


class RefinementBudgetError(WishartError, RuntimeError):
    pass


class ShapeError(WishartError, ValueError):
    """Shape parameter outside the admissible set for the requested operation."""


class DomainError(WishartError, ValueError):
    pass
