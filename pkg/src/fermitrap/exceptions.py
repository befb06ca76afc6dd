"""Exception hierarchy shared by all modules."""


class FermiTrapError(Exception):
    """Base class for errors raised by this package."""


class CapabilityError(FermiTrapError, ValueError):
    """An argument lies outside the range an evaluator supports."""


class DomainError(FermiTrapError, ValueError):
    """A position or wavenumber lies outside an approximation's validity window."""


class ConsistencyError(FermiTrapError, RuntimeError):
    """An internal cross-check failed (e.g. a root count mismatch)."""


class InsufficientDataError(FermiTrapError, ValueError):
    """Too few samples to perform a fit."""


class NonConvergenceError(FermiTrapError, ArithmeticError):
    """A numerical procedure did not reach its tolerance.

    The best available estimate and its error are attached so callers can
    decide whether to use them anyway.
    """

    def __init__(self, message, estimate=None, error=None, diagnostics=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
        self.diagnostics = diagnostics or {}
