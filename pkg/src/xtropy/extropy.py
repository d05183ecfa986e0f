"""Extropy, weighted extropy and general weighted extropy.

Everything is computed on the quantile scale through the profile

    Lambda(u) = w(F^{-1}(u)) * f(F^{-1}(u)),   0 < u < 1,

so that ``J^w(X) = -E[Lambda(U)] / 2`` with ``U`` uniform.  The plain extropy
is the unit-weight case and the weighted extropy the ``w(x) = x`` case; both go
through the same code path.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .distributions import Distribution
from .errors import DomainError, QuadratureError
from .quadrature import DEFAULT_TOL, BetaOrderKernel, beta_expectation, integrate
from .weights import UNIT, WeightFunction, power, weight_eval

__all__ = [
    "METHODS",
    "ExtropyValue",
    "LambdaProfile",
    "lambda_eval",
    "general_weighted_extropy",
    "extropy",
    "weighted_extropy",
    "order_statistic_extropy",
]

METHODS = ("quadrature", "closed_form", "monte_carlo")


@dataclass(frozen=True)
class ExtropyValue:
    """A signed extropy value with its error estimate and provenance.

    ``notes`` collects non-fatal diagnostics such as a fallback between
    representations.
    """

    value: float
    error_estimate: float
    method: str
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class LambdaProfile:
    """The map ``u -> w(F^{-1}(u)) f(F^{-1}(u))``; call it like a function."""

    dist: Distribution
    weight: WeightFunction = UNIT

    def __call__(self, u):
        x = self.dist.quantile(u)
        return np.asarray(weight_eval(self.weight, x)) * np.asarray(self.dist.density_quantile(u))


def lambda_eval(profile: LambdaProfile, u):
    """Evaluate ``profile`` at ``u`` in (0, 1)."""
    out = profile(u)
    return float(out) if np.ndim(u) == 0 else out


def general_weighted_extropy(dist: Distribution, w: WeightFunction = UNIT,
                             tol: float = DEFAULT_TOL) -> ExtropyValue:
    """``J^w(X) = -1/2 * integral_0^1 Lambda(u) du``.

    Raises:
        DivergenceError: when ``w f**2`` is not integrable (for instance a
            Pareto law with ``w(x) = x**m`` and ``m >= 2 alpha + 1``).
    """
    res = integrate(LambdaProfile(dist, w), 0.0, 1.0, tol)
    return ExtropyValue(-0.5 * res.value, 0.5 * res.abs_error_estimate, "quadrature")


def extropy(dist: Distribution, tol: float = DEFAULT_TOL) -> ExtropyValue:
    """``J(X) = -1/2 * integral f(x)**2 dx``."""
    return general_weighted_extropy(dist, UNIT, tol)


def weighted_extropy(dist: Distribution, tol: float = DEFAULT_TOL) -> ExtropyValue:
    """``J^x(X) = -1/2 * integral x f(x)**2 dx``."""
    return general_weighted_extropy(dist, power(1), tol)


def _reverse_hazard_integrand(dist: Distribution, w: WeightFunction):
    # M(u) = w(F^{-1}(u)) r(F^{-1}(u))
    def M(u):
        x = dist.quantile(u)
        return np.asarray(weight_eval(w, x)) * np.asarray(dist.reverse_hazard(x))
    return M


def order_statistic_extropy(dist: Distribution, w: WeightFunction, i: int, n: int,
                            tol: float = DEFAULT_TOL) -> ExtropyValue:
    """General weighted extropy of the ``i``-th order statistic of ``n`` draws.

    The returned value uses the beta-kernel form

        J^w(X_{i:n}) = -(n c_{i,n} / 2) E[Lambda(B_{2i-1:2n-1})].

    The reverse-hazard form ``-(c_{i,n} (2i-1) / 4) E[M(B_{2i:2n})]`` with
    ``M(u) = w(F^{-1}(u)) r(F^{-1}(u))`` is computed as a cross-check.  If that
    form cannot be evaluated the kernel form is returned with a note and a
    ``RuntimeWarning``; the same happens if the two disagree by more than
    ``10 * tol`` beyond their error estimates.
    """
    from .rss import rss_coefficients

    if not (1 <= i <= n):
        raise DomainError(f"order statistic index must satisfy 1 <= i <= n, got i={i}, n={n}")
    c = rss_coefficients(n).c[i - 1]
    scale = 0.5 * n * c
    res = beta_expectation(LambdaProfile(dist, w), BetaOrderKernel.for_rss(i, n), tol)
    value = -scale * res.value
    error = scale * res.abs_error_estimate

    notes: tuple[str, ...] = ()
    rh_scale = 0.25 * c * (2 * i - 1)
    try:
        rh = beta_expectation(_reverse_hazard_integrand(dist, w),
                              BetaOrderKernel(2 * i, 2 * n - 2 * i + 1), tol)
    except (QuadratureError, DomainError) as exc:
        notes = (f"reverse-hazard form unavailable ({type(exc).__name__}); kernel form used",)
        warnings.warn(notes[0], RuntimeWarning, stacklevel=2)
    else:
        rh_value = -rh_scale * rh.value
        allowed = 10 * tol + error + rh_scale * rh.abs_error_estimate
        if not math.isclose(value, rh_value, rel_tol=0.0, abs_tol=allowed):
            notes = (f"representations disagree: kernel {value!r} vs reverse-hazard {rh_value!r}",)
            warnings.warn(notes[0], RuntimeWarning, stacklevel=2)
    return ExtropyValue(value, error, "quadrature", notes)
