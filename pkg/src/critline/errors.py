"""Exception hierarchy shared by every module of the package."""


class CritlineError(Exception):
    """Base class for all package errors."""


class PoleError(CritlineError, ZeroDivisionError):
    """Evaluation requested at a pole."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class AccuracyError(CritlineError, ArithmeticError):
    """A computable error bound exceeds the accepted tolerance."""


class IndeterminateError(CritlineError):
    """Both h(s) and h(1 - s) vanish: c_s is 0/0 at a simultaneous zero."""


class SignConditionError(CritlineError, ValueError):
    """eta * R_i < 0 for a declared abstract point."""


class IsolationError(CritlineError):
    """A contour that should isolate one singularity encloses something else."""


class BoundaryError(CritlineError):
    """A zero or pole lies (numerically) on an integration boundary."""


class NonConvergenceError(CritlineError):
    """An iteration or refinement exceeded its cap."""


class DepthExhaustedError(NonConvergenceError):
    """Zero search could not resolve every sub-rectangle."""

    def __init__(self, message, unresolved=()):
        super().__init__(message)
        self.unresolved = list(unresolved)


class BracketError(CritlineError):
    """Secular root bracketing failed."""


class PreconditionError(CritlineError, ValueError):
    """Caller violated an operation precondition."""


class ConfigError(CritlineError, ValueError):
    """Malformed run configuration."""
