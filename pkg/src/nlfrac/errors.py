"""Exception types shared across the package.

All errors derive from NlfracError so callers can catch the package's
failures with a single except clause.  Validation problems (bad
parameters, malformed specs) are ValueErrors; iteration and evaluation
breakdowns are RuntimeErrors.
"""

from __future__ import annotations


class NlfracError(Exception):
    """Base class for every error raised by this package."""


class InvalidSpecError(NlfracError, ValueError):
    """A derivative specification violates its structural constraints."""


class ParameterOutOfRangeError(NlfracError, ValueError):
    """A scalar argument lies outside the documented domain."""


class DerivativeLeavesAlgebraError(NlfracError, ValueError):
    """Differentiating a power sum would produce an exponent <= -1.

    Parameters
    ----------
    message : str
        Description of the offending terms.
    stage : int or None
        1-based index of the operator factor that failed, when the
        error arises inside a composed derivative.
    """

    def __init__(self, message: str, stage: int | None = None):
        super().__init__(message if stage is None else f"stage {stage}: {message}")
        self.stage = stage


class EvaluationAtZeroUndefinedError(NlfracError, ValueError):
    """A power sum with a negative exponent was evaluated at x = 0."""


class NonConvergenceError(NlfracError, RuntimeError):
    """An iterative method broke down (NaN/infinite iterate)."""
