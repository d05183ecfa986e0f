"""Extropy of simple random samples (SRS) and one-cycle ranked set samples (RSS).

With ``E_i = E[Lambda(B_{2i-1:2n-1})]`` the RSS extropy factorizes as

    J^w(X_RSS^(n)) = -(Q_n / 2) * prod_i E_i,
    Q_n = n**n * prod_i c_{i,n},
    c_{i,n} = C(2i-2, i-1) C(2n-2i, n-i) / C(2n-1, n-1),

and the SRS extropy is ``-(E[Lambda(U)])**n / 2``.
"""
from __future__ import annotations

import functools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import gammaln, xlog1py, xlogy

from .distributions import Distribution
from .errors import DivergenceError, DomainError, QuadratureError
from .extropy import ExtropyValue, LambdaProfile, general_weighted_extropy
from .quadrature import DEFAULT_TOL, BetaOrderKernel, QuadratureResult, beta_expectation, integrate
from .weights import WeightFunction, weight_eval

__all__ = [
    "EXACT_MAX_N",
    "RssCoefficients",
    "rss_coefficients",
    "srs_extropy",
    "rss_factors",
    "rss_extropy",
    "direct_product_extropy",
    "rss_srs_ratio_bound",
]

#: Coefficients are exact rationals up to this sample size, log-space beyond.
EXACT_MAX_N = 20


def _log_comb(n: int, k: int) -> float:
    return float(gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1))


@dataclass(frozen=True)
class RssCoefficients:
    """``c_{i,n}`` for ``i = 1..n`` and ``Q_n``.

    ``c_exact``/``q_n_exact`` hold the rational values when ``n <= EXACT_MAX_N``
    and are ``None`` otherwise.
    """

    n: int
    c: tuple[float, ...]
    q_n: float
    log_q_n: float
    c_exact: tuple[Fraction, ...] | None = None
    q_n_exact: Fraction | None = None


@functools.lru_cache(maxsize=None)
def rss_coefficients(n: int) -> RssCoefficients:
    """Coefficients of the RSS product formula for sample size ``n``."""
    if int(n) != n or n < 1:
        raise DomainError(f"sample size must be a positive integer, got {n!r}")
    n = int(n)
    if n <= EXACT_MAX_N:
        denom = math.comb(2 * n - 1, n - 1)
        exact = tuple(Fraction(math.comb(2 * i - 2, i - 1) * math.comb(2 * n - 2 * i, n - i), denom)
                      for i in range(1, n + 1))
        q = Fraction(n**n)
        for ci in exact:
            q *= ci
        return RssCoefficients(n, tuple(float(ci) for ci in exact), float(q),
                               math.log(q.numerator) - math.log(q.denominator), exact, q)
    log_denom = _log_comb(2 * n - 1, n - 1)
    log_c = [_log_comb(2 * i - 2, i - 1) + _log_comb(2 * n - 2 * i, n - i) - log_denom
             for i in range(1, n + 1)]
    log_q = n * math.log(n) + math.fsum(log_c)
    return RssCoefficients(n, tuple(math.exp(v) for v in log_c), math.exp(log_q), log_q)


def srs_extropy(dist: Distribution, w: WeightFunction, n: int,
                tol: float = DEFAULT_TOL) -> ExtropyValue:
    """``J^w(X_SRS^(n)) = -(1/2) (-2 J^w(X))**n``."""
    if int(n) != n or n < 1:
        raise DomainError(f"sample size must be a positive integer, got {n!r}")
    base = general_weighted_extropy(dist, w, tol)
    if n == 1:
        return base
    mean = -2.0 * base.value
    mean_err = 2.0 * base.error_estimate
    value = -0.5 * mean**n
    error = 0.5 * n * abs(mean) ** (n - 1) * mean_err
    return ExtropyValue(value, error, "quadrature")


def rss_factors(dist: Distribution, w: WeightFunction, n: int,
                tol: float = DEFAULT_TOL) -> list[QuadratureResult]:
    """``E[Lambda(B_{2i-1:2n-1})]`` for ``i = 1..n``, in index order.

    Raises:
        DivergenceError: with ``factor`` set to the first diverging index.
    """
    profile = LambdaProfile(dist, w)
    out = []
    for i in range(1, n + 1):
        try:
            out.append(beta_expectation(profile, BetaOrderKernel.for_rss(i, n), tol))
        except DivergenceError as exc:
            raise DivergenceError(f"RSS factor i={i} of n={n} diverges: {exc}",
                                  exc.estimate, exc.abs_error, factor=i) from exc
    return out


def _product_with_error(values: list[float], errors: list[float]) -> tuple[float, float]:
    # first-order propagation without dividing by factors that may vanish
    product = math.prod(values)
    err = 0.0
    for k, e in enumerate(errors):
        others = math.prod(v for j, v in enumerate(values) if j != k)
        err += abs(others) * e
    return product, err


def rss_extropy(dist: Distribution, w: WeightFunction, n: int, tol: float = DEFAULT_TOL, *,
                cross_check: bool = True) -> ExtropyValue:
    """``J^w(X_RSS^(n)) = -(Q_n / 2) prod_i E[Lambda(B_{2i-1:2n-1})]``.

    With ``cross_check`` the result is compared with
    :func:`direct_product_extropy`, which integrates the squared
    order-statistic densities on the original scale; a disagreement beyond
    ``10 * tol`` plus the error estimates is reported in ``notes`` and as a
    ``RuntimeWarning``.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"sample size must be a positive integer, got {n!r}")
    n = int(n)
    coeffs = rss_coefficients(n)
    factors = rss_factors(dist, w, n, tol)
    product, perr = _product_with_error([f.value for f in factors],
                                        [f.abs_error_estimate for f in factors])
    value = -0.5 * coeffs.q_n * product
    error = 0.5 * coeffs.q_n * perr
    notes: tuple[str, ...] = ()
    if cross_check and n > 1:
        try:
            direct = direct_product_extropy(dist, w, n, tol)
        except (QuadratureError, DomainError) as exc:
            notes = (f"direct-product cross-check unavailable ({type(exc).__name__})",)
        else:
            allowed = 10 * tol + error + direct.error_estimate
            if not math.isclose(value, direct.value, rel_tol=0.0, abs_tol=allowed):
                notes = (f"direct product disagrees: {direct.value!r} vs {value!r}",)
                warnings.warn(notes[0], RuntimeWarning, stacklevel=2)
    return ExtropyValue(value, error, "quadrature", notes)


def _order_stat_pdf(dist: Distribution, i: int, n: int):
    log_coef = float(gammaln(n + 1) - gammaln(i) - gammaln(n - i + 1))

    def pdf(x):
        F = np.asarray(dist.cdf(x))
        f = np.asarray(dist.pdf(x))
        with np.errstate(divide="ignore", invalid="ignore"):
            logs = log_coef + xlogy(i - 1, F) + xlog1py(n - i, -F)
            out = np.exp(logs) * f
        return np.where(f > 0, out, 0.0)
    return pdf


def direct_product_extropy(dist: Distribution, w: WeightFunction, n: int,
                           tol: float = DEFAULT_TOL) -> ExtropyValue:
    """RSS extropy as ``-(1/2) prod_i integral w(x) f_{i:n}(x)**2 dx``.

    This integrates on the original scale and never touches the quantile
    function, so it is an independent check of :func:`rss_extropy`.
    """
    lo, hi = dist.support
    values, errors = [], []
    for i in range(1, n + 1):
        fin = _order_stat_pdf(dist, i, n)

        def integrand(x, fin=fin):
            d = fin(x)
            with np.errstate(invalid="ignore"):
                out = np.asarray(weight_eval(w, x)) * d * d
            return np.where(d > 0, out, 0.0)
        try:
            res = integrate(integrand, lo, hi, tol)
        except DivergenceError as exc:
            raise DivergenceError(f"order statistic i={i} of n={n} diverges: {exc}",
                                  exc.estimate, exc.abs_error, factor=i) from exc
        values.append(res.value)
        errors.append(res.abs_error_estimate)
    product, perr = _product_with_error(values, errors)
    return ExtropyValue(-0.5 * product, 0.5 * perr, "quadrature")


def rss_srs_ratio_bound(n: int) -> float:
    """Upper bound on ``J^w(X_RSS^(n)) / J^w(X_SRS^(n))`` for ``n >= 2``:

        n^{2n} / (n-1)^{2(n-1)(n-2)} * prod_{i=2}^{n-1} C(n-1, i-1)^2
            (i-1)^{2i-2} (n-i)^{2n-2i}

    evaluated exactly for ``n <= EXACT_MAX_N`` and in log space beyond.
    """
    if int(n) != n or n < 2:
        raise DomainError(f"the ratio bound needs n >= 2, got {n!r}")
    n = int(n)
    if n <= EXACT_MAX_N:
        num = n ** (2 * n) * math.prod(math.comb(n - 1, i - 1) ** 2 * (i - 1) ** (2 * i - 2)
                                       * (n - i) ** (2 * n - 2 * i) for i in range(2, n))
        return float(Fraction(num, (n - 1) ** (2 * (n - 1) * (n - 2))))
    log_b = 2 * n * math.log(n) - 2 * (n - 1) * (n - 2) * math.log(n - 1)
    terms = [2 * _log_comb(n - 1, i - 1) + (2 * i - 2) * math.log(i - 1)
             + (2 * n - 2 * i) * math.log(n - i) for i in range(2, n)]
    return math.exp(log_b + math.fsum(terms))
