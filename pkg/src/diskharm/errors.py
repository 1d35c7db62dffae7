"""Exception types shared across the package."""


class DiskharmError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(DiskharmError):
    """Malformed or non-finite input data."""


class DomainError(DiskharmError):
    """Evaluation requested outside the open unit disk."""


class UnsupportedExponentError(DiskharmError):
    """Exponent outside the supported range [1, inf]."""


class SingularPointError(DiskharmError):
    """A polar-derivative quantity was requested at the origin."""


class ConfigError(DiskharmError):
    """Inconsistent or incomplete run configuration."""


class NumericOverflowError(DiskharmError):
    """A closed-form evaluation overflowed double precision."""


class SenseViolationError(DiskharmError):
    """The Jacobian failed to stay positive on the sampled grid."""

    def __init__(self, message, point=None, jacobian=None):
        super().__init__(message)
        self.point = point
        self.jacobian = jacobian


class ConvergenceError(DiskharmError):
    """An adaptive computation ran out of budget before reaching tolerance.

    Carries the best estimate so far and the residual error bound.
    """

    def __init__(self, message, best=None, residual=None):
        super().__init__(message)
        self.best = best
        self.residual = residual
