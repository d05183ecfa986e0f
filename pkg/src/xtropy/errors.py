"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class QuadratureError(ArithmeticError):
    """Adaptive integration failed to reach the requested tolerance.

    Attributes:
        estimate: best value found before giving up.
        abs_error: error estimate attached to ``estimate``.
    """

    def __init__(self, message: str, estimate: float = float("nan"),
                 abs_error: float = float("inf")):
        super().__init__(message)
        self.estimate = estimate
        self.abs_error = abs_error


class DivergenceError(QuadratureError):
    """The integral does not exist (the integrand is not integrable).

    ``factor`` is set by the RSS product routines to the 1-based index of the
    order statistic whose factor diverged.
    """

    def __init__(self, message: str, estimate: float = float("nan"),
                 abs_error: float = float("inf"), factor: int | None = None):
        super().__init__(message, estimate, abs_error)
        self.factor = factor
