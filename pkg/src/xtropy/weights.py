"""Weight functions for the general weighted extropy."""
from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

__all__ = [
    "DEFAULT_GRID_SIZE",
    "WeightFunction",
    "UNIT",
    "power",
    "exp_weight",
    "custom",
    "weight_eval",
    "dominates",
    "default_grid",
    "parse_weight",
]

DEFAULT_GRID_SIZE = 512

_KINDS = ("unit", "power", "exp", "custom")


@dataclass(frozen=True)
class WeightFunction:
    """A weight ``w`` together with the structural flags theorems condition on.

    Flags are declarations; :meth:`validate` checks them on a grid.
    ``is_decreasing`` is kept alongside ``is_increasing`` so that a constant
    weight can honestly claim both.
    """

    kind: str
    m: float | None = None
    func: Callable | None = field(default=None, compare=False)
    name: str | None = None
    is_increasing: bool = False
    is_decreasing: bool = False
    is_odd: bool = False
    is_nonnegative: bool = True

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown weight kind {self.kind!r}")
        if self.kind == "power":
            if self.m is None or not (self.m > 0 and math.isfinite(self.m)):
                raise DomainError(f"power weight needs m > 0, got {self.m!r}")
            object.__setattr__(self, "m", float(self.m))
        if self.kind == "custom" and self.func is None:
            raise DomainError("custom weight needs a callable")

    @property
    def integer_exponent(self) -> bool:
        return self.kind == "power" and float(self.m).is_integer()

    @property
    def spec(self) -> str:
        if self.kind == "unit":
            return "unit"
        if self.kind == "exp":
            return "exp"
        if self.kind == "power":
            m = repr(self.m)
            return f"pow:{m[:-2] if m.endswith('.0') else m}"
        return f"custom:{self.name or 'anonymous'}"

    def __call__(self, x):
        return weight_eval(self, x)

    def __str__(self) -> str:
        return self.spec

    def nonnegative_on(self, grid) -> bool:
        values = np.asarray(weight_eval(self, np.asarray(grid, dtype=float)))
        return bool(np.all(values >= 0.0))

    def validate(self, grid) -> None:
        """Check every declared flag on ``grid``.

        Raises:
            ValueError: naming the first flag that the grid contradicts.
        """
        x = np.sort(np.asarray(grid, dtype=float))
        values = np.asarray(weight_eval(self, x))
        steps = np.diff(values)
        if self.is_increasing and np.any(steps < 0):
            raise ValueError(f"weight {self.spec} declared increasing but decreases on grid")
        if self.is_decreasing and np.any(steps > 0):
            raise ValueError(f"weight {self.spec} declared decreasing but increases on grid")
        if self.is_nonnegative and np.any(values < 0):
            raise ValueError(f"weight {self.spec} declared nonnegative but is negative on grid")
        if self.is_odd:
            mirrored = np.asarray(weight_eval(self, -x))
            if not np.allclose(mirrored, -values, rtol=1e-12, atol=1e-15):
                raise ValueError(f"weight {self.spec} declared odd but w(-x) != -w(x)")


UNIT = WeightFunction("unit", is_increasing=True, is_decreasing=True)


def power(m: float) -> WeightFunction:
    """``w(x) = x**m``.

    Only an odd integer exponent gives an odd weight.  On the negative axis
    the weight is defined only for integer ``m``; the nonnegativity flag refers
    to the positive half-line.
    """
    m = float(m)
    odd = m.is_integer() and int(m) % 2 == 1
    return WeightFunction("power", m=m, is_increasing=True, is_odd=odd)


def exp_weight() -> WeightFunction:
    """``w(x) = exp(x)``: positive and increasing everywhere."""
    return WeightFunction("exp", is_increasing=True)


def custom(func: Callable, name: str | None = None, *, increasing: bool = False,
           decreasing: bool = False, odd: bool = False,
           nonnegative: bool = True) -> WeightFunction:
    """Wrap a vectorized callable as a weight with caller-declared flags."""
    return WeightFunction("custom", func=func, name=name, is_increasing=increasing,
                          is_decreasing=decreasing, is_odd=odd,
                          is_nonnegative=nonnegative)


def weight_eval(w: WeightFunction, x):
    """Evaluate ``w(x)`` for a scalar or array ``x``.

    Raises:
        DomainError: for a power weight with non-integer exponent at ``x < 0``.
    """
    arr = np.asarray(x, dtype=float)
    if w.kind == "unit":
        out = np.ones(arr.shape)
    elif w.kind == "exp":
        out = np.exp(arr)
    elif w.kind == "power":
        if not w.integer_exponent and np.any(arr < 0):
            raise DomainError(f"x**{w.m} is undefined for negative x")
        out = arr**w.m
    else:
        out = np.asarray(w.func(arr), dtype=float)
        out = np.broadcast_to(out, arr.shape).copy()
    return float(out) if arr.ndim == 0 else out


def dominates(w1: WeightFunction, w2: WeightFunction, grid) -> bool:
    """True iff ``w1(x) >= w2(x)`` at every grid point."""
    x = np.asarray(grid, dtype=float)
    return bool(np.all(np.asarray(weight_eval(w1, x)) >= np.asarray(weight_eval(w2, x))))


def default_grid(lower: float, upper: float, size: int = DEFAULT_GRID_SIZE) -> np.ndarray:
    """Equally spaced interior grid on ``(lower, upper)``.

    Unbounded ends are cut at a finite point so that the grid stays usable:
    a half-line ``(a, inf)`` becomes ``(a, a + 50)``, ``(-inf, b)`` becomes
    ``(b - 50, b)``.
    """
    if not math.isfinite(lower) and not math.isfinite(upper):
        lower, upper = -50.0, 50.0
    elif not math.isfinite(lower):
        lower = upper - 50.0
    elif not math.isfinite(upper):
        upper = lower + 50.0
    k = np.arange(size) + 0.5
    return lower + (upper - lower) * k / size


def parse_weight(text: str) -> WeightFunction:
    """Parse ``unit``, ``exp`` or ``pow:m``.

    Raises:
        DomainError: naming the offending token.
    """
    s = text.strip().lower()
    if s == "unit":
        return UNIT
    if s == "exp":
        return exp_weight()
    kind, sep, arg = s.partition(":")
    if kind == "pow" and sep:
        try:
            return power(float(arg))
        except ValueError:
            raise DomainError(f"bad exponent {arg!r} in weight spec {text!r}") from None
    raise DomainError(f"unknown weight spec {text!r}")
