"""Exception types raised across the package."""


class DualSmaleError(Exception):
    """Base class for all domain errors."""


class NonFiniteValue(DualSmaleError, ValueError):
    pass


class NonzeroConstantTerm(DualSmaleError, ValueError):
    pass


class NotNormalized(DualSmaleError, ValueError):
    pass


class CriticalBasepoint(DualSmaleError, ValueError):
    pass


class NotSymmetric(DualSmaleError, ValueError):
    pass


class DegreeMismatch(DualSmaleError, ValueError):
    pass


class DegreeTooSmall(DualSmaleError, ValueError):
    pass


class DegreeTooHigh(DualSmaleError, ValueError):
    pass


class DerivativeVanished(DualSmaleError, ArithmeticError):
    pass


class NoConvergence(DualSmaleError, ArithmeticError):
    """Root iteration did not meet its residual tolerance.

    The partially converged :class:`~dualsmale.rootfind.RootSet` is kept on
    ``rootset`` so callers can still inspect it.
    """

    def __init__(self, message, rootset=None):
        super().__init__(message)
        self.rootset = rootset


class GuaranteeViolated(DualSmaleError, ArithmeticError):
    """A proven lower bound failed numerically. Never expected mathematically."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate
