"""Univariate absolutely continuous laws used throughout the package.

Every law exposes ``pdf``, ``cdf``, ``quantile``, ``reverse_hazard`` and
``density_quantile`` (the map ``u -> f(F^{-1}(u))``).  All evaluation methods
accept scalars or array-likes and return the same shape; scalars come back as
plain ``float``.

Laws are immutable frozen dataclasses, so they compare by value and are safe to
share across threads.
"""
from __future__ import annotations

import abc
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy import special
from scipy.interpolate import PchipInterpolator

from .errors import DomainError

__all__ = [
    "QUANTILE_CLAMP",
    "Support",
    "Distribution",
    "Uniform",
    "Power",
    "Exponential",
    "Pareto",
    "Beta",
    "LinearRising",
    "LinearFalling",
    "NegSqrtExp",
    "Triangular",
    "Scaled",
    "Custom",
    "parse_distribution",
]

#: Quantile arguments are clamped to [eps, 1 - eps] on unbounded sides.
QUANTILE_CLAMP = 1e-12


class Support(NamedTuple):
    """Interval ``(lower, upper)`` outside of which the density vanishes."""

    lower: float
    upper: float

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.lower) and math.isfinite(self.upper)


def _fmt(x: float) -> str:
    # 17 significant digits round-trips every double; shortest repr otherwise
    s = repr(float(x))
    if s.endswith(".0"):
        s = s[:-2]
    return s


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not (value > 0 and math.isfinite(value)):
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")
    return value


def _scalar_or_array(values: np.ndarray, scalar: bool):
    return float(values) if scalar else values


class Distribution(abc.ABC):
    """Base class.  Subclasses implement the ``_pdf``/``_cdf``/``_ppf`` kernels
    on points inside the support; masking, clamping and shape handling live
    here."""

    @property
    @abc.abstractmethod
    def support(self) -> Support: ...

    @property
    @abc.abstractmethod
    def spec(self) -> str:
        """Canonical ``family:params`` string understood by
        :func:`parse_distribution`."""

    @abc.abstractmethod
    def _pdf(self, x: np.ndarray) -> np.ndarray: ...

    @abc.abstractmethod
    def _cdf(self, x: np.ndarray) -> np.ndarray: ...

    @abc.abstractmethod
    def _ppf(self, u: np.ndarray) -> np.ndarray: ...

    def pdf(self, x):
        """Density ``f(x)``; zero outside the closed support."""
        arr = np.asarray(x, dtype=float)
        lo, hi = self.support
        inside = (arr >= lo) & (arr <= hi)
        out = np.zeros(arr.shape)
        if np.any(inside):
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                out[inside] = self._pdf(arr[inside])
        return _scalar_or_array(out, arr.ndim == 0)

    def cdf(self, x):
        """Distribution function ``F(x)``, clamped to 0 below and 1 above the
        support."""
        arr = np.asarray(x, dtype=float)
        lo, hi = self.support
        out = np.where(arr >= hi, 1.0, 0.0)
        inside = (arr > lo) & (arr < hi)
        if np.any(inside):
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                out[inside] = np.clip(self._cdf(arr[inside]), 0.0, 1.0)
        return _scalar_or_array(out, arr.ndim == 0)

    def _sf(self, x: np.ndarray) -> np.ndarray:
        # families with an accurate upper tail override this
        return 1.0 - self._cdf(x)

    def sf(self, x):
        """Survival function ``1 - F(x)``."""
        arr = np.asarray(x, dtype=float)
        lo, hi = self.support
        out = np.where(arr <= lo, 1.0, 0.0)
        inside = (arr > lo) & (arr < hi)
        if np.any(inside):
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                out[inside] = np.clip(self._sf(arr[inside]), 0.0, 1.0)
        return _scalar_or_array(out, arr.ndim == 0)

    def _check_u(self, u) -> np.ndarray:
        arr = np.asarray(u, dtype=float)
        if not np.all((arr > 0.0) & (arr < 1.0)):
            raise DomainError("quantile level must lie strictly inside (0, 1)")
        lo, hi = self.support
        if not math.isfinite(lo):
            arr = np.maximum(arr, QUANTILE_CLAMP)
        if not math.isfinite(hi):
            arr = np.minimum(arr, 1.0 - QUANTILE_CLAMP)
        return arr

    def quantile(self, u):
        """Inverse distribution function ``F^{-1}(u)`` for ``0 < u < 1``.

        Raises:
            DomainError: if any ``u`` is outside the open unit interval.
        """
        scalar = np.ndim(u) == 0
        arr = self._check_u(u)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            out = np.asarray(self._ppf(arr), dtype=float)
        return _scalar_or_array(out, scalar)

    def density_quantile(self, u):
        """``f(F^{-1}(u))``, the density evaluated on the quantile scale."""
        return self.pdf(self.quantile(u))

    def reverse_hazard(self, x):
        """Reverse hazard ``r(x) = f(x) / F(x)``.

        Raises:
            DomainError: where ``F(x) = 0`` (the rate diverges there).
        """
        arr = np.asarray(x, dtype=float)
        F = np.asarray(self.cdf(arr))
        if np.any(F <= 0.0):
            raise DomainError("reverse hazard is undefined where F(x) = 0")
        out = np.asarray(self.pdf(arr)) / F
        return _scalar_or_array(out, arr.ndim == 0)

    def __str__(self) -> str:
        return self.spec


@dataclass(frozen=True)
class Uniform(Distribution):
    a: float = 0.0
    b: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        if not (self.a < self.b and math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError(f"uniform requires finite a < b, got ({self.a}, {self.b})")

    @property
    def support(self) -> Support:
        return Support(self.a, self.b)

    @property
    def spec(self) -> str:
        return f"uniform:{_fmt(self.a)},{_fmt(self.b)}"

    def _pdf(self, x):
        return np.full(x.shape, 1.0 / (self.b - self.a))

    def _cdf(self, x):
        return (x - self.a) / (self.b - self.a)

    def _ppf(self, u):
        return self.a + u * (self.b - self.a)


@dataclass(frozen=True)
class Power(Distribution):
    """Power law on (0, 1): ``F(x) = x**theta``."""

    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", _positive("theta", self.theta))

    @property
    def support(self) -> Support:
        return Support(0.0, 1.0)

    @property
    def spec(self) -> str:
        return f"power:{_fmt(self.theta)}"

    def _pdf(self, x):
        return self.theta * x ** (self.theta - 1.0)

    def _cdf(self, x):
        return x**self.theta

    def _ppf(self, u):
        return u ** (1.0 / self.theta)


@dataclass(frozen=True)
class Exponential(Distribution):
    rate: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "rate", _positive("rate", self.rate))

    @property
    def support(self) -> Support:
        return Support(0.0, math.inf)

    @property
    def spec(self) -> str:
        return f"exp:{_fmt(self.rate)}"

    def _pdf(self, x):
        return self.rate * np.exp(-self.rate * x)

    def _cdf(self, x):
        return -np.expm1(-self.rate * x)

    def _sf(self, x):
        return np.exp(-self.rate * x)

    def _ppf(self, u):
        return -np.log1p(-u) / self.rate

    def density_quantile(self, u):
        arr = self._check_u(u)
        out = self.rate * (1.0 - arr)
        return _scalar_or_array(out, np.ndim(u) == 0)


@dataclass(frozen=True)
class Pareto(Distribution):
    """Pareto law on (1, inf): ``F(x) = 1 - x**(-alpha)``."""

    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", _positive("alpha", self.alpha))

    @property
    def support(self) -> Support:
        return Support(1.0, math.inf)

    @property
    def spec(self) -> str:
        return f"pareto:{_fmt(self.alpha)}"

    def _pdf(self, x):
        return self.alpha * x ** (-self.alpha - 1.0)

    def _cdf(self, x):
        return -np.expm1(-self.alpha * np.log(x))

    def _sf(self, x):
        return x ** (-self.alpha)

    def _ppf(self, u):
        return np.exp(-np.log1p(-u) / self.alpha)


@dataclass(frozen=True)
class Beta(Distribution):
    a: float
    b: float

    def __post_init__(self):
        object.__setattr__(self, "a", _positive("a", self.a))
        object.__setattr__(self, "b", _positive("b", self.b))

    @property
    def support(self) -> Support:
        return Support(0.0, 1.0)

    @property
    def spec(self) -> str:
        return f"beta:{_fmt(self.a)},{_fmt(self.b)}"

    def _pdf(self, x):
        logc = special.betaln(self.a, self.b)
        return np.exp((self.a - 1) * np.log(x) + (self.b - 1) * np.log1p(-x) - logc)

    def _cdf(self, x):
        return special.betainc(self.a, self.b, x)

    def _sf(self, x):
        return special.betainc(self.b, self.a, 1.0 - x)

    def _ppf(self, u):
        return special.betaincinv(self.a, self.b, u)


@dataclass(frozen=True)
class LinearRising(Distribution):
    """Density ``2x`` on (0, 1)."""

    @property
    def support(self) -> Support:
        return Support(0.0, 1.0)

    @property
    def spec(self) -> str:
        return "linear-rising"

    def _pdf(self, x):
        return 2.0 * x

    def _cdf(self, x):
        return x * x

    def _ppf(self, u):
        return np.sqrt(u)


@dataclass(frozen=True)
class LinearFalling(Distribution):
    """Density ``2(1 - x)`` on (0, 1)."""

    @property
    def support(self) -> Support:
        return Support(0.0, 1.0)

    @property
    def spec(self) -> str:
        return "linear-falling"

    def _pdf(self, x):
        return 2.0 * (1.0 - x)

    def _cdf(self, x):
        return 1.0 - (1.0 - x) ** 2

    def _ppf(self, u):
        return 1.0 - np.sqrt(1.0 - u)


@dataclass(frozen=True)
class NegSqrtExp(Distribution):
    """``F(x) = exp(-sqrt(-x))`` on (-inf, 0).

    ``log F`` is convex, so the law has an increasing reverse hazard
    ``r(x) = 1 / (2 sqrt(-x))``.
    """

    @property
    def support(self) -> Support:
        return Support(-math.inf, 0.0)

    @property
    def spec(self) -> str:
        return "negsqrtexp"

    def _pdf(self, x):
        s = np.sqrt(-x)
        return np.exp(-s) / (2.0 * s)

    def _cdf(self, x):
        return np.exp(-np.sqrt(-x))

    def _ppf(self, u):
        lu = np.log(u)
        return -(lu * lu)


@dataclass(frozen=True)
class Triangular(Distribution):
    """Triangular law on (left, right) with peak at ``mode``."""

    left: float = -1.0
    mode: float = 0.0
    right: float = 1.0

    def __post_init__(self):
        for name in ("left", "mode", "right"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not (self.left <= self.mode <= self.right and self.left < self.right):
            raise DomainError("triangular requires left <= mode <= right, left < right")

    @property
    def support(self) -> Support:
        return Support(self.left, self.right)

    @property
    def spec(self) -> str:
        return f"triangular:{_fmt(self.left)},{_fmt(self.mode)},{_fmt(self.right)}"

    def _pdf(self, x):
        a, c, b = self.left, self.mode, self.right
        up = 2.0 * (x - a) / ((b - a) * (c - a)) if c > a else np.zeros_like(x)
        down = 2.0 * (b - x) / ((b - a) * (b - c)) if b > c else np.zeros_like(x)
        return np.where(x < c, up, down)

    def _cdf(self, x):
        a, c, b = self.left, self.mode, self.right
        lower = (x - a) ** 2 / ((b - a) * (c - a)) if c > a else np.zeros_like(x)
        upper = 1.0 - (b - x) ** 2 / ((b - a) * (b - c)) if b > c else np.ones_like(x)
        return np.where(x < c, lower, upper)

    def _ppf(self, u):
        a, c, b = self.left, self.mode, self.right
        split = (c - a) / (b - a)
        lower = a + np.sqrt(u * (b - a) * (c - a))
        upper = b - np.sqrt((1.0 - u) * (b - a) * (b - c))
        return np.where(u < split, lower, upper)


@dataclass(frozen=True)
class Scaled(Distribution):
    """Law of ``c * X`` for ``X ~ base`` and ``c > 0``."""

    base: Distribution
    c: float

    def __post_init__(self):
        object.__setattr__(self, "c", _positive("c", self.c))

    @property
    def support(self) -> Support:
        lo, hi = self.base.support
        return Support(self.c * lo, self.c * hi)

    @property
    def spec(self) -> str:
        return f"scaled:{self.base.spec},c={_fmt(self.c)}"

    def _pdf(self, x):
        return np.asarray(self.base.pdf(x / self.c)) / self.c

    def _cdf(self, x):
        return np.asarray(self.base.cdf(x / self.c))

    def _sf(self, x):
        return np.asarray(self.base.sf(x / self.c))

    def _ppf(self, u):
        return self.c * np.asarray(self.base._ppf(u))

    def quantile(self, u):
        # exact: the base applies its own clamping
        out = self.c * np.asarray(self.base.quantile(u))
        return _scalar_or_array(out, np.ndim(u) == 0)

    def density_quantile(self, u):
        out = np.asarray(self.base.density_quantile(u)) / self.c
        return _scalar_or_array(out, np.ndim(u) == 0)


@dataclass(frozen=True, eq=False)
class Custom(Distribution):
    """Law given by a monotone quantile table.

    The quantile function is the monotone cubic (PCHIP) interpolant through
    ``(levels[k], values[k])``; ``levels`` must run from exactly 0 to exactly 1
    so the support is bounded.  The density is ``1 / Q'(F(x))``.
    """

    levels: tuple[float, ...]
    values: tuple[float, ...]
    _q: PchipInterpolator = field(init=False, repr=False, compare=False)
    _dq: object = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        u = np.asarray(self.levels, dtype=float)
        x = np.asarray(self.values, dtype=float)
        if u.ndim != 1 or u.shape != x.shape or u.size < 2:
            raise DomainError("quantile table needs two equal-length 1-D sequences")
        if u[0] != 0.0 or u[-1] != 1.0:
            raise DomainError("quantile table levels must start at 0 and end at 1")
        if np.any(np.diff(u) <= 0) or np.any(np.diff(x) <= 0):
            raise DomainError("quantile table must be strictly increasing")
        object.__setattr__(self, "levels", tuple(u.tolist()))
        object.__setattr__(self, "values", tuple(x.tolist()))
        q = PchipInterpolator(u, x)
        object.__setattr__(self, "_q", q)
        object.__setattr__(self, "_dq", q.derivative())

    def __eq__(self, other):
        return (isinstance(other, Custom) and self.levels == other.levels
                and self.values == other.values)

    def __hash__(self):
        return hash((self.levels, self.values))

    @property
    def support(self) -> Support:
        return Support(self.values[0], self.values[-1])

    @property
    def spec(self) -> str:
        pairs = ";".join(f"{_fmt(u)}/{_fmt(x)}" for u, x in zip(self.levels, self.values))
        return f"custom:{pairs}"

    def _ppf(self, u):
        return self._q(u)

    def _cdf(self, x):
        # bisection on the monotone interpolant; 64 halvings reach double precision
        lo = np.zeros_like(x)
        hi = np.ones_like(x)
        for _ in range(64):
            mid = 0.5 * (lo + hi)
            below = self._q(mid) < x
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        return 0.5 * (lo + hi)

    def _pdf(self, x):
        return 1.0 / self._dq(self._cdf(x))

    def density_quantile(self, u):
        arr = self._check_u(u)
        out = 1.0 / self._dq(arr)
        return _scalar_or_array(out, np.ndim(u) == 0)


_FAMILIES = {
    "uniform": (Uniform, 2),
    "power": (Power, 1),
    "exp": (Exponential, 1),
    "pareto": (Pareto, 1),
    "beta": (Beta, 2),
    "triangular": (Triangular, 3),
    "linear-rising": (LinearRising, 0),
    "linear-falling": (LinearFalling, 0),
    "negsqrtexp": (NegSqrtExp, 0),
}


def _number(token: str, text: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise DomainError(f"bad number {token!r} in distribution spec {text!r}") from None


def parse_distribution(text: str) -> Distribution:
    """Build a law from a ``family:param[,param]`` string.

    Examples: ``exp:1.0``, ``power:2``, ``pareto:2.5``, ``uniform:0,1``,
    ``linear-rising``, ``triangular:-1,0,1``, ``scaled:exp:1.0,c=2``,
    ``custom:0/0;0.5/1;1/3``.

    Raises:
        DomainError: naming the offending token when the string is invalid.
    """
    s = text.strip()
    family, _, rest = s.partition(":")
    family = family.lower()
    if family == "scaled":
        base_text, sep, ctoken = rest.rpartition(",c=")
        if not sep:
            raise DomainError(f"scaled spec needs a trailing ',c=<factor>': {text!r}")
        return Scaled(parse_distribution(base_text), _number(ctoken, text))
    if family == "custom":
        levels, values = [], []
        for pair in filter(None, rest.split(";")):
            u, sep, x = pair.partition("/")
            if not sep:
                raise DomainError(f"bad quantile-table entry {pair!r} in {text!r}")
            levels.append(_number(u, text))
            values.append(_number(x, text))
        return Custom(tuple(levels), tuple(values))
    if family not in _FAMILIES:
        raise DomainError(f"unknown distribution family {family!r} in {text!r}")
    cls, arity = _FAMILIES[family]
    params = [_number(t, text) for t in rest.split(",")] if rest.strip() else []
    if len(params) != arity:
        raise DomainError(
            f"family {family!r} takes {arity} parameter(s), got {len(params)} in {text!r}")
    return cls(*params)
