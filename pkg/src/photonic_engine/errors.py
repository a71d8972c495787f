"""Exception hierarchy shared across the package."""


class EngineError(Exception):
    """Base class for all package errors."""


class InvalidStateError(EngineError, ValueError):
    """A density matrix violates Hermiticity, trace or positivity."""


class UnnormalizableStateError(InvalidStateError):
    pass


class InvalidDimensionError(EngineError, ValueError):
    pass


class DimensionMismatchError(EngineError, ValueError):
    pass


class AboveThresholdError(EngineError, ArithmeticError):
    """The effective decay rate is not positive, so no steady state exists.

    ``margin`` is ``p1 - (p2 + kappa/2)``; it is non-negative when raised.
    """

    def __init__(self, margin, message=None):
        self.margin = float(margin)
        super().__init__(message or f"above threshold: p1 - (p2 + kappa/2) = {self.margin:.6g} >= 0")


class TraceDriftError(EngineError, ArithmeticError):
    def __init__(self, message, time=None, trace_error=None):
        self.time = time
        self.trace_error = trace_error
        super().__init__(message)


class TruncationError(EngineError, ArithmeticError):
    """Fock-space truncation too small for the requested state."""

    def __init__(self, message, tail_mass=None, suggested_dim=None):
        self.tail_mass = tail_mass
        self.suggested_dim = suggested_dim
        super().__init__(message)


class ConvergenceError(EngineError, ArithmeticError):
    def __init__(self, message, residual=None, spectral_gap=None):
        self.residual = residual
        self.spectral_gap = spectral_gap
        super().__init__(message)


class DomainError(EngineError, ValueError):
    pass


class ConfigError(EngineError, ValueError):
    pass
