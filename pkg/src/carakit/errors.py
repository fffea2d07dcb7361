"""Exception types shared across the package."""


class CaraKitError(Exception):
    """Base class for all package errors."""


class DomainError(CaraKitError, ValueError):
    """An argument lies outside the domain of an operation."""


class PoleError(CaraKitError, ZeroDivisionError):
    """Evaluation hit a pole.

    ``subexpr`` is the offending subexpression (rendered text when known) and
    ``point`` the input at which the pole was met.
    """

    def __init__(self, message, subexpr=None, point=None):
        super().__init__(message)
        self.subexpr = subexpr
        self.point = point


class CertificationError(CaraKitError):
    """A sampled membership check failed; ``witness`` is the bad sample."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionError(CaraKitError):
    """An operation was invoked on inputs its hypotheses exclude."""

    def __init__(self, message, detail=None):
        super().__init__(message)
        self.detail = detail


class ConvergenceError(CaraKitError):
    """An iterative construction did not meet its stopping rule."""
