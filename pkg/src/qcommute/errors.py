"""Exception types raised across the package."""


class QCommuteError(Exception):
    pass


class NonGenericPoint(QCommuteError, ZeroDivisionError):
    """A parameter point hits a vanishing factor or a degenerate spectrum."""


class EigenvalueCollision(NonGenericPoint):
    pass


class NotTerminating(QCommuteError, ValueError):
    pass


class NotASquare(QCommuteError, ValueError):
    pass


class ShapeMismatch(QCommuteError, ValueError):
    pass


class BudgetExceeded(QCommuteError, RuntimeError):
    pass


class TriangularityViolation(QCommuteError, AssertionError):
    pass


class ExhaustedRetries(QCommuteError, RuntimeError):
    pass


class ToleranceNotMet(QCommuteError, ArithmeticError):
    pass
