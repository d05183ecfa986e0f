"""Closed-form RSS extropies for the power, exponential and Pareto families
with power weight ``w(x) = x**m``, plus the linear-density pair.

All gamma and factorial ratios are taken in log space.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .distributions import Distribution, Exponential, LinearFalling, LinearRising, Pareto, Power
from .errors import DivergenceError, DomainError
from .quadrature import DEFAULT_TOL, integrate
from .rss import rss_coefficients
from .weights import WeightFunction

__all__ = [
    "FORMULAS",
    "ClosedFormReport",
    "power_rss_closed",
    "exponential_rss_closed",
    "exp_orderstat_moment",
    "pareto_rss_closed",
    "linear_pair_values",
    "double_factorial",
    "closed_form_for",
]

FORMULAS = ("power", "exponential", "pareto", "linear_pair")


@dataclass(frozen=True)
class ClosedFormReport:
    """Value of a closed form.

    ``correction_applied`` is True for the power-family formula, whose
    denominator gamma argument is ``(m + (2n+1) theta - 1) / theta``; without
    the division by ``theta`` the formula disagrees with direct integration
    already at ``n = 1``.
    """

    value: float
    formula_id: str
    correction_applied: bool = False

    def __float__(self) -> float:
        return self.value


def _check_n(n: int) -> int:
    if int(n) != n or n < 1:
        raise DomainError(f"sample size must be a positive integer, got {n!r}")
    return int(n)


def _check_nonneg(name: str, value: float) -> float:
    value = float(value)
    if not (value >= 0 and math.isfinite(value)):
        raise DomainError(f"{name} must be a nonnegative finite number, got {value!r}")
    return value


def _check_pos(name: str, value: float) -> float:
    value = float(value)
    if not (value > 0 and math.isfinite(value)):
        raise DomainError(f"{name} must be positive, got {value!r}")
    return value


def double_factorial(k: int) -> int:
    """``k!! = k (k-2) (k-4) ...``, with ``0!! = (-1)!! = 1``."""
    return math.prod(range(k, 0, -2)) if k > 0 else 1


def power_rss_closed(theta: float, m: float, n: int) -> ClosedFormReport:
    """RSS extropy of the power law ``F(x) = x**theta`` with weight ``x**m``:

        -(Q_n/2) theta^n prod_i (2n-1)! Gamma((m + 2i theta - 1)/theta)
                         / ((2i-2)! Gamma((m + (2n+1) theta - 1)/theta))

    ``m = 0`` gives the unit weight.

    Raises:
        DivergenceError: if a gamma argument is not positive (the factor
            integral diverges at ``u = 0``).
    """
    theta = _check_pos("theta", theta)
    m = _check_nonneg("m", m)
    n = _check_n(n)
    top = (m + (2 * n + 1) * theta - 1.0) / theta
    logs = []
    for i in range(1, n + 1):
        arg = (m + 2 * i * theta - 1.0) / theta
        if arg <= 0:
            raise DivergenceError(f"power closed form diverges: gamma argument {arg:g} <= 0 "
                                  f"at factor i={i}", factor=i)
        logs.append(gammaln(2 * n) - gammaln(2 * i - 1) + gammaln(arg) - gammaln(top))
    coeffs = rss_coefficients(n)
    log_abs = coeffs.log_q_n + n * math.log(theta) + math.fsum(logs)
    return ClosedFormReport(-0.5 * math.exp(log_abs), "power", correction_applied=True)


def _exp_orderstat_density(k: int, N: int):
    # density of the k-th order statistic of N unit exponentials
    log_coef = float(gammaln(N + 1) - gammaln(k) - gammaln(N - k + 1))

    def pdf(x):
        with np.errstate(divide="ignore"):
            logs = (log_coef + (k - 1) * np.log(-np.expm1(-x)) if k > 1 else log_coef) \
                - (N - k + 1) * x
        return np.exp(logs)
    return pdf


def exp_orderstat_moment(i: int, n: int, m: float, tol: float = DEFAULT_TOL) -> float:
    """``E[Z^m]`` for ``Z`` the ``(2i-1)``-th order statistic of ``2n`` unit
    exponentials, by quadrature.

    For ``m = 1`` the result is checked against
    ``E[Z_{k:N}] = sum_{j=N-k+1}^{N} 1/j``.
    """
    n = _check_n(n)
    if not (1 <= i <= n):
        raise DomainError(f"need 1 <= i <= n, got i={i}, n={n}")
    m = _check_nonneg("m", m)
    if m == 0:
        return 1.0
    k, N = 2 * i - 1, 2 * n
    pdf = _exp_orderstat_density(k, N)
    value = integrate(lambda x: x**m * pdf(x), 0.0, math.inf, tol).value
    if m == 1:
        harmonic = math.fsum(1.0 / j for j in range(N - k + 1, N + 1))
        if not math.isclose(value, harmonic, rel_tol=0.0, abs_tol=100 * tol):
            raise ArithmeticError(f"moment quadrature {value!r} disagrees with harmonic sum "
                                  f"{harmonic!r}")
    return value


def exponential_rss_closed(rate: float, m: int, n: int, tol: float = DEFAULT_TOL) -> ClosedFormReport:
    """RSS extropy of ``Exp(rate)`` with weight ``x**m`` for integer ``m >= 0``:

        -(Q_n (2n-1)!!) / (2^{n+1} n^n) * rate^{-n(m-1)} * prod_i E[Z_{2i-1:2n}^m]

    Non-integer ``m`` is rejected; use the quadrature path for it.
    """
    rate = _check_pos("rate", rate)
    if int(m) != m or m < 0:
        raise DomainError(f"exponential closed form needs an integer m >= 0, got {m!r}")
    m, n = int(m), _check_n(n)
    coeffs = rss_coefficients(n)
    moments = [exp_orderstat_moment(i, n, m, tol) for i in range(1, n + 1)]
    log_abs = (coeffs.log_q_n + math.log(double_factorial(2 * n - 1))
               - (n + 1) * math.log(2) - n * math.log(n) - n * (m - 1) * math.log(rate)
               + math.fsum(math.log(v) for v in moments))
    return ClosedFormReport(-math.exp(log_abs), "exponential")


def pareto_rss_closed(alpha: float, m: float, n: int) -> ClosedFormReport:
    """RSS extropy of the Pareto law ``F(x) = 1 - x**-alpha`` with weight
    ``x**m``:

        -(Q_n/2) alpha^n prod_i (2n-1)!/(2n-2i)!
            Gamma((2n alpha - 2i alpha + 2 alpha - m + 1)/alpha)
            / Gamma((alpha + 2n alpha - m + 1)/alpha)

    Raises:
        DivergenceError: when a gamma argument is not positive; the first to
            fail is ``i = n``, i.e. ``m >= 2 alpha + 1``.
    """
    alpha = _check_pos("alpha", alpha)
    m = _check_nonneg("m", m)
    n = _check_n(n)
    bottom = (alpha + 2 * n * alpha - m + 1.0) / alpha
    logs = []
    for i in range(1, n + 1):
        arg = (2 * n * alpha - 2 * i * alpha + 2 * alpha - m + 1.0) / alpha
        if arg <= 0 or bottom <= 0:
            raise DivergenceError(f"Pareto closed form diverges: gamma argument {arg:g} <= 0 "
                                  f"at factor i={i} (needs m < 2 alpha + 1)", factor=i)
        logs.append(gammaln(2 * n) - gammaln(2 * n - 2 * i + 1) + gammaln(arg) - gammaln(bottom))
    coeffs = rss_coefficients(n)
    log_abs = coeffs.log_q_n + n * math.log(alpha) + math.fsum(logs)
    return ClosedFormReport(-0.5 * math.exp(log_abs), "pareto")


def linear_pair_values(m: float) -> tuple[float, float]:
    """``(J^w(X), J^w(Y))`` for densities ``2x`` and ``2(1-x)`` on (0, 1) with
    weight ``x**m``."""
    m = _check_nonneg("m", m)
    jx = -2.0 / (m + 3.0)
    jy = -2.0 * (1.0 / (m + 1.0) - 2.0 / (m + 2.0) + 1.0 / (m + 3.0))
    return jx, jy


def _weight_exponent(w: WeightFunction) -> float:
    if w.kind == "unit":
        return 0.0
    if w.kind == "power":
        return float(w.m)
    raise DomainError(f"no closed form for weight {w.spec}")


def closed_form_for(dist: Distribution, w: WeightFunction, n: int) -> ClosedFormReport:
    """Pick the closed form matching ``dist`` and a unit or power weight.

    Raises:
        DomainError: when no closed form covers the combination.
    """
    m = _weight_exponent(w)
    if isinstance(dist, Power):
        return power_rss_closed(dist.theta, m, n)
    if isinstance(dist, Exponential):
        return exponential_rss_closed(dist.rate, m, n)
    if isinstance(dist, Pareto):
        return pareto_rss_closed(dist.alpha, m, n)
    if isinstance(dist, (LinearRising, LinearFalling)):
        if n != 1:
            raise DomainError("the linear-density closed forms cover n = 1 only")
        jx, jy = linear_pair_values(m)
        return ClosedFormReport(jx if isinstance(dist, LinearRising) else jy, "linear_pair")
    raise DomainError(f"no closed form for distribution {dist.spec}")
