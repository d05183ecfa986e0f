"""Grid checkers for stochastic orders, the IRFR aging class and the
Delta(u) partition criterion for RSS extropy comparisons.

Every checker evaluates the defining inequality on a finite grid and reports
the worst violation.  Shape orders (convex transform, star, superadditive)
and IRFR compare slopes whose scale varies a lot along a quantile grid, so
their violations are normalized by ``max(1, |slope|)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .distributions import Distribution
from .errors import DomainError
from .extropy import LambdaProfile, general_weighted_extropy
from .quadrature import DEFAULT_TOL, BetaOrderKernel
from .rss import rss_extropy
from .weights import WeightFunction

__all__ = [
    "ORDER_KINDS",
    "SLACK",
    "DEAD_BAND",
    "DEFAULT_ORDER_GRID",
    "OrderVerdict",
    "check_order",
    "check_irfr",
    "DeltaPartition",
    "DeltaOutcome",
    "delta_criterion",
    "quantile_grid",
]

ORDER_KINDS = ("st", "lr", "hr", "disp", "convex_transform", "star", "superadditive")
SLACK = 1e-9
DEAD_BAND = 1e-12
DEFAULT_ORDER_GRID = 1024
_PAIR_GRID = 64
# superadditivity pairs stay below this cdf level so G^{-1}(F(x+y)) keeps
# its precision
_PAIR_CDF_CAP = 1.0 - 1e-9


@dataclass(frozen=True)
class OrderVerdict:
    """Outcome of a grid check; ``holds`` iff ``worst_violation <= 1e-9``.

    ``worst_point`` is an ``x`` value, or a ``u`` value for the
    quantile-form dispersive check.
    """

    order: str
    holds: bool
    worst_violation: float
    worst_point: float
    form: str = "composition"


def quantile_grid(size: int) -> np.ndarray:
    """Midpoint grid ``(j + 1/2) / size`` on (0, 1)."""
    return (np.arange(size) + 0.5) / size


def _check_grid_size(grid_size: int) -> int:
    if int(grid_size) != grid_size or grid_size < 16:
        raise ValueError(f"grid_size must be an integer >= 16, got {grid_size!r}")
    return int(grid_size)


def _verdict(order: str, violations: np.ndarray, points: np.ndarray,
             form: str = "composition") -> OrderVerdict:
    violations = np.where(np.isnan(violations), np.inf, violations)
    if violations.size == 0:
        return OrderVerdict(order, True, 0.0, math.nan, form)
    k = int(np.argmax(violations))
    worst = max(float(violations[k]), 0.0)
    return OrderVerdict(order, worst <= SLACK, worst, float(points[k]), form)


def _union_grid(X: Distribution, Y: Distribution, size: int) -> np.ndarray:
    u = quantile_grid(size)
    return np.unique(np.concatenate([X.quantile(u), Y.quantile(u)]))


def _composition(X: Distribution, Y: Distribution, x: np.ndarray) -> np.ndarray:
    # psi(x) = G^{-1}(F(x)), with F pulled strictly inside (0, 1)
    u = np.clip(X.cdf(x), np.nextafter(0.0, 1.0), np.nextafter(1.0, 0.0))
    return np.asarray(Y.quantile(u))


def _slopes(x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    keep = np.concatenate([[True], np.diff(x) > 0])
    x, y = x[keep], y[keep]
    return np.diff(y) / np.diff(x), 0.5 * (x[1:] + x[:-1])


def _nondecreasing(values: np.ndarray, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    drop = values[:-1] - values[1:]
    scale = np.maximum(1.0, np.maximum(np.abs(values[:-1]), np.abs(values[1:])))
    return drop / scale, points[1:]


def check_order(kind: str, X: Distribution, Y: Distribution,
                grid_size: int = DEFAULT_ORDER_GRID, form: str = "composition") -> OrderVerdict:
    """Check ``X <=_kind Y`` on a grid.

    ``kind`` is one of :data:`ORDER_KINDS`.  For ``disp``, ``form`` selects
    either monotonicity of ``G^{-1}(F(x)) - x`` ("composition") or the
    quantile-density inequality ``f(F^{-1}(u)) >= g(G^{-1}(u))``
    ("density_quantile").  The shape orders test ``G^{-1} F`` for convexity,
    for ``psi(x)/x`` increasing, and for ``psi(x+y) >= psi(x) + psi(y)``.

    Raises:
        ValueError: for an unknown kind or form, or ``grid_size < 16``.
        DomainError: for star or superadditive checks when ``X`` can be
            negative.
    """
    grid_size = _check_grid_size(grid_size)
    if kind not in ORDER_KINDS:
        raise ValueError(f"unknown order {kind!r}; expected one of {ORDER_KINDS}")
    if form not in ("composition", "density_quantile"):
        raise ValueError(f"unknown form {form!r}")
    if form != "composition" and kind != "disp":
        raise ValueError("the density_quantile form exists only for disp")
    if kind in ("star", "superadditive") and X.support.lower < 0:
        raise DomainError(f"{kind} order needs a nonnegative X, got support {tuple(X.support)}")
    if X == Y:
        return OrderVerdict(kind, True, 0.0, math.nan, form)

    with np.errstate(all="ignore"):
        if kind == "st":
            x = _union_grid(X, Y, grid_size)
            return _verdict(kind, np.asarray(X.sf(x)) - np.asarray(Y.sf(x)), x)

        if kind in ("lr", "hr"):
            x = _union_grid(X, Y, grid_size)
            if kind == "lr":
                a, b = np.asarray(X.pdf(x)), np.asarray(Y.pdf(x))
            else:
                a, b = np.asarray(X.sf(x)), np.asarray(Y.sf(x))
            # b/a increasing: b(x) a(y) <= a(x) b(y) for adjacent x < y
            lhs, rhs = b[:-1] * a[1:], a[:-1] * b[1:]
            scale = np.where(lhs + rhs > 0, lhs + rhs, 1.0)
            live = (a[:-1] + b[:-1] > 0) & (a[1:] + b[1:] > 0)
            return _verdict(kind, np.where(live, (lhs - rhs) / scale, 0.0), x[1:])

        u = quantile_grid(grid_size)
        if kind == "disp" and form == "density_quantile":
            fq, gq = np.asarray(X.density_quantile(u)), np.asarray(Y.density_quantile(u))
            return _verdict(kind, gq - fq, u, form)

        x = np.asarray(X.quantile(u))
        psi = np.asarray(Y.quantile(u))
        if kind == "disp":
            h = psi - x
            return _verdict(kind, h[:-1] - h[1:], x[1:])
        if kind == "convex_transform":
            s, mid = _slopes(x, psi)
            return _verdict(kind, *_nondecreasing(s, mid))
        if kind == "star":
            pos = x > 0
            ratio = psi[pos] / x[pos]
            return _verdict(kind, *_nondecreasing(ratio, x[pos]))

        # superadditive on a triangular pair grid
        k = min(grid_size, _PAIR_GRID)
        xs = np.asarray(X.quantile(quantile_grid(k)))
        i, j = np.triu_indices(k)
        s = xs[i] + xs[j]
        ok = (s < X.support.upper) & (np.asarray(X.cdf(s)) <= _PAIR_CDF_CAP)
        i, j, s = i[ok], j[ok], s[ok]
        ps = np.asarray(Y.quantile(quantile_grid(k)))
        whole = _composition(X, Y, s)
        gap = (ps[i] + ps[j] - whole) / np.maximum(1.0, np.abs(whole))
        return _verdict(kind, gap, s)


def check_irfr(X: Distribution, grid_size: int = DEFAULT_ORDER_GRID) -> OrderVerdict:
    """IRFR check: ``ln F`` convex, tested through normalized slopes of
    ``ln F`` between consecutive quantile-grid points.

    Raises:
        DomainError: if ``F`` vanishes on the grid.
    """
    grid_size = _check_grid_size(grid_size)
    x = np.asarray(X.quantile(quantile_grid(grid_size)))
    F = np.asarray(X.cdf(x))
    if np.any(F <= 0):
        raise DomainError("F vanishes on the grid; ln F is undefined")
    s, mid = _slopes(x, np.log(F))
    return _verdict("irfr", *_nondecreasing(s, mid))


@dataclass(frozen=True)
class DeltaPartition:
    """Signs of ``Delta(u) = Lambda_X^{w1}(u) - Lambda_Y^{w2}(u)`` on a grid.

    ``inf_phi_on_a1[i-1]`` and ``sup_phi_on_a2[i-1]`` are taken over the
    kernel density of ``B_{2i-1:2n-1}``; an empty set gives ``+inf`` and
    ``-inf`` respectively.
    """

    grid: np.ndarray = field(repr=False)
    delta: np.ndarray = field(repr=False)
    a1: np.ndarray = field(repr=False)
    a2: np.ndarray = field(repr=False)
    inf_phi_on_a1: tuple[float, ...]
    sup_phi_on_a2: tuple[float, ...]


class DeltaOutcome(NamedTuple):
    partition: DeltaPartition
    hypothesis_holds: bool
    conclusion_holds: bool
    rss_x: float
    rss_y: float


def delta_criterion(X: Distribution, Y: Distribution, w1: WeightFunction, w2: WeightFunction,
                    n: int, grid_size: int = DEFAULT_ORDER_GRID, *, tol: float = DEFAULT_TOL,
                    slack: float = 1e-8) -> DeltaOutcome:
    """Evaluate the Delta(u) comparison criterion for sample size ``n``.

    The hypothesis is the per-kernel condition
    ``inf_{A1} phi_i >= sup_{A2} phi_i`` for every ``i``, together with
    ``J^{w1}(X) <= J^{w2}(Y)`` and both profiles being nonnegative on the
    grid (the product step needs nonnegative factors).  The conclusion is
    ``J^{w1}(X_RSS) <= J^{w2}(Y_RSS) + slack``.
    """
    grid_size = _check_grid_size(grid_size)
    u = quantile_grid(grid_size)
    lx = np.asarray(LambdaProfile(X, w1)(u))
    ly = np.asarray(LambdaProfile(Y, w2)(u))
    delta = lx - ly
    a1 = np.flatnonzero(delta > DEAD_BAND)
    a2 = np.flatnonzero(delta < -DEAD_BAND)
    infs, sups = [], []
    for i in range(1, n + 1):
        phi = np.asarray(BetaOrderKernel.for_rss(i, n).pdf(u))
        infs.append(float(phi[a1].min()) if a1.size else math.inf)
        sups.append(float(phi[a2].max()) if a2.size else -math.inf)
    partition = DeltaPartition(u, delta, a1, a2, tuple(infs), tuple(sups))

    jx = general_weighted_extropy(X, w1, tol)
    jy = general_weighted_extropy(Y, w2, tol)
    hypothesis = (all(a >= b for a, b in zip(infs, sups))
                  and jx.value <= jy.value + jx.error_estimate + jy.error_estimate
                  and bool(np.all(lx >= 0)) and bool(np.all(ly >= 0)))
    rx = rss_extropy(X, w1, n, tol, cross_check=False).value
    ry = rss_extropy(Y, w2, n, tol, cross_check=False).value
    return DeltaOutcome(partition, hypothesis, rx <= ry + slack, rx, ry)
