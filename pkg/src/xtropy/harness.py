"""Executable verification suites for the comparison, monotonicity,
transformation, symmetry and bound results on (weighted) RSS extropy.

Each suite returns a :class:`TheoremReport`.  A case is *run* when its
hypotheses hold on the numeric grid; the margin of a case is how far the
conclusion holds (negative means violated), and a case passes when its
margin is at least ``-SLACK``.  Cases whose hypotheses fail are counted in
``skipped``.
"""
from __future__ import annotations

import json
import math
from collections.abc import Iterable, Sequence
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .distributions import Beta, Distribution, Exponential, Power, Scaled, Triangular, Uniform
from .errors import DivergenceError, DomainError, QuadratureError
from .extropy import LambdaProfile, order_statistic_extropy
from .orders import check_irfr, check_order, delta_criterion, quantile_grid
from .quadrature import DEFAULT_TOL
from .rss import rss_extropy, rss_srs_ratio_bound, srs_extropy
from .weights import UNIT, WeightFunction, custom, default_grid, dominates, exp_weight, power

__all__ = [
    "SLACK",
    "TheoremReport",
    "Pair",
    "random_pairs",
    "verify_disp_comparison",
    "verify_delta_criterion",
    "verify_orderstat_monotonicity",
    "verify_transformation",
    "verify_symmetry_characterization",
    "verify_rss_element_monotone",
    "verify_bound",
    "render_table",
    "dump_witness",
]

SLACK = 1e-8
_SYMMETRY_ZERO = 1e-8
_CONTROL_NONZERO = 1e-3

Pair = tuple[Distribution, Distribution, WeightFunction, WeightFunction]


@dataclass
class TheoremReport:
    """Aggregate outcome of one suite.

    ``passed`` iff every run case passed.  ``record_only`` marks suites whose
    outcome is documented rather than enforced.
    """

    theorem_id: str
    cases_run: int = 0
    cases_passed: int = 0
    worst_margin: float = math.inf
    witness: dict | None = None
    skipped: int = 0
    not_applicable: bool = False
    record_only: bool = False
    details: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.cases_passed == self.cases_run

    def add(self, margin: float, case: dict) -> bool:
        """Record one run case; returns whether it passed."""
        ok = margin >= -SLACK
        self.cases_run += 1
        self.cases_passed += ok
        if margin < self.worst_margin or self.witness is None:
            self.worst_margin = min(self.worst_margin, margin)
            self.witness = {**case, "margin": margin}
        self.details.append({**case, "margin": margin, "pass": ok})
        return ok

    def skip(self, case: dict, reason: str) -> None:
        self.skipped += 1
        self.details.append({**case, "skipped": reason})

    def to_dict(self) -> dict:
        out = asdict(self)
        out["pass"] = self.passed
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), default=_json_default, sort_keys=True, allow_nan=False)


def _json_default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def _finite(x: float) -> float | str:
    # JSON has no infinities; spell them out
    if math.isfinite(x):
        return x
    return "inf" if x > 0 else ("-inf" if x < 0 else "nan")


def render_table(reports: Iterable[TheoremReport]) -> str:
    """Plain-text summary, one row per report."""
    head = f"{'theorem':<28} {'run':>5} {'passed':>6} {'skipped':>7} {'worst margin':>14}  status"
    lines = [head, "-" * len(head)]
    for r in reports:
        status = ("n/a" if r.not_applicable else ("PASS" if r.passed else "FAIL")) + (
            " (recorded)" if r.record_only else "")
        lines.append(f"{r.theorem_id:<28} {r.cases_run:>5} {r.cases_passed:>6} {r.skipped:>7} "
                     f"{r.worst_margin:>14.6g}  {status}")
    return "\n".join(lines)


def dump_witness(report: TheoremReport, directory: str | Path) -> list[Path]:
    """Write every failing case of ``report`` to ``directory`` as JSON."""
    directory = Path(directory)
    written = []
    failing = [d for d in report.details if d.get("pass") is False]
    if failing:
        directory.mkdir(parents=True, exist_ok=True)
    for k, case in enumerate(failing):
        path = directory / f"{report.theorem_id}-{k:03d}.json"
        clean = {key: _finite(v) if isinstance(v, float) else v for key, v in case.items()}
        path.write_text(json.dumps(clean, indent=2, sort_keys=True, default=_json_default) + "\n")
        written.append(path)
    return written


def _finish(report: TheoremReport, witness_dir) -> TheoremReport:
    if witness_dir is not None:
        dump_witness(report, witness_dir)
    return report


def _rss_or_neg_inf(dist: Distribution, w: WeightFunction, n: int, tol: float) -> float:
    # a divergent extropy integral is -inf on the extended real line
    try:
        return rss_extropy(dist, w, n, tol, cross_check=False).value
    except DivergenceError:
        return -math.inf


def _margin(lo: float, hi: float) -> float:
    """How far ``lo <= hi`` holds on the extended reals."""
    if lo == hi:
        return 0.0
    return hi - lo


def _case(X: Distribution, Y: Distribution | None, w1: WeightFunction,
          w2: WeightFunction | None = None, **extra) -> dict:
    out = {"X": X.spec, "w1": w1.spec}
    if Y is not None:
        out["Y"] = Y.spec
    if w2 is not None:
        out["w2"] = w2.spec
    out.update(extra)
    return out


# ---------------------------------------------------------------- comparisons

def _pair_grid(X: Distribution, Y: Distribution) -> np.ndarray:
    lo = min(X.support.lower, Y.support.lower)
    hi = max(X.support.upper, Y.support.upper)
    return default_grid(lo, hi)


def _weight_ok(w: WeightFunction, grid: np.ndarray, *, increasing: bool) -> bool:
    if increasing and not w.is_increasing:
        return False
    try:
        w.validate(grid)
    except (ValueError, DomainError):
        return False
    return w.nonnegative_on(grid)


def _common_hypotheses(X: Distribution, Y: Distribution) -> str | None:
    if X.support.lower < 0 or Y.support.lower < 0:
        return "variables not nonnegative"
    ux, uy = X.support.upper, Y.support.upper
    if not (math.isfinite(ux) and math.isfinite(uy)) or not math.isclose(ux, uy, rel_tol=1e-12):
        return "upper endpoints differ or are infinite"
    return None


def _disp_direction(X: Distribution, Y: Distribution, w1: WeightFunction, w2: WeightFunction,
                    grid_size: int) -> tuple[str | None, str]:
    """Which part of the comparison applies: ``'a'`` (X <=disp Y, w1 >= w2),
    ``'b'`` (X >=disp Y, w1 <= w2) or None with a reason."""
    reason = _common_hypotheses(X, Y)
    if reason:
        return None, reason
    grid = _pair_grid(X, Y)
    if not (_weight_ok(w1, grid, increasing=True) and _weight_ok(w2, grid, increasing=False)):
        return None, "w1 not increasing and nonnegative, or w2 negative"
    if dominates(w1, w2, grid) and check_order("disp", X, Y, grid_size).holds:
        return "a", ""
    if dominates(w2, w1, grid) and check_order("disp", Y, X, grid_size).holds:
        return "b", ""
    return None, "no dispersive ordering with matching weight dominance"


def _shape_direction(X: Distribution, Y: Distribution, w1: WeightFunction, w2: WeightFunction,
                     grid_size: int) -> tuple[str | None, str, str]:
    """Like :func:`_disp_direction` for the convex/star/superadditive
    variants, which also need ``f(0) >= g(0) > 0`` (or the mirror)."""
    reason = _common_hypotheses(X, Y)
    if reason:
        return None, "", reason
    grid = _pair_grid(X, Y)
    if not (_weight_ok(w1, grid, increasing=True) and _weight_ok(w2, grid, increasing=False)):
        return None, "", "w1 not increasing and nonnegative, or w2 negative"
    f0, g0 = float(X.pdf(0.0)), float(Y.pdf(0.0))
    for part, (A, B, wa, wb, fa, fb) in (("a", (X, Y, w1, w2, f0, g0)),
                                         ("b", (Y, X, w2, w1, g0, f0))):
        if not (fa >= fb > 0) or not dominates(wa, wb, grid):
            continue
        for kind in ("superadditive", "star", "convex_transform"):
            if check_order(kind, A, B, grid_size).holds:
                return part, kind, ""
    return None, "", "no shape ordering with f(0) >= g(0) > 0 and weight dominance"


def verify_disp_comparison(pairs: Sequence[Pair], n: int, *, grid_size: int = 1024,
                           tol: float = DEFAULT_TOL, variants: bool = True,
                           witness_dir=None) -> TheoremReport:
    """Dispersive-order comparison of (RSS) general weighted extropies.

    Part (a): nonnegative ``X``, ``Y`` with a common finite upper endpoint,
    ``w1`` increasing, ``w1 >= w2`` and ``X <=disp Y`` give
    ``J^{w1}(X) <= J^{w2}(Y)`` and the same for RSS samples of size ``n``.
    Part (b) is the mirror statement.  With ``variants`` the shape orders
    (superadditive, star, convex transform) are also tried as the ordering
    hypothesis, with the extra condition ``f(0) >= g(0) > 0``.
    Each applicable pair contributes the single-variable and the RSS case.
    """
    report = TheoremReport("disp_comparison")
    sizes = sorted({1, int(n)})
    for X, Y, w1, w2 in pairs:
        routes = []
        part, reason = _disp_direction(X, Y, w1, w2, grid_size)
        routes.append(("disp", part, reason))
        if variants:
            vpart, kind, vreason = _shape_direction(X, Y, w1, w2, grid_size)
            routes.append((kind or "shape", vpart, vreason))
        for order, part, reason in routes:
            if part is None:
                report.skip(_case(X, Y, w1, w2, order=order), reason)
                continue
            for size in sizes:
                jx = _rss_or_neg_inf(X, w1, size, tol)
                jy = _rss_or_neg_inf(Y, w2, size, tol)
                margin = _margin(jx, jy) if part == "a" else _margin(jy, jx)
                report.add(margin, _case(X, Y, w1, w2, order=order, part=part, n=size,
                                         j_x=jx, j_y=jy))
    return _finish(report, witness_dir)


def verify_delta_criterion(pairs: Sequence[Pair], n: int, *, grid_size: int = 1024,
                           tol: float = DEFAULT_TOL, witness_dir=None) -> TheoremReport:
    """Delta(u) criterion: hypothesis-satisfying pairs must give
    ``J^{w1}(X_RSS) <= J^{w2}(Y_RSS)``."""
    report = TheoremReport("delta_criterion")
    for X, Y, w1, w2 in pairs:
        try:
            out = delta_criterion(X, Y, w1, w2, n, grid_size, tol=tol)
        except (QuadratureError, DomainError) as exc:
            report.skip(_case(X, Y, w1, w2, n=n), f"extropy not available: {type(exc).__name__}")
            continue
        if not out.hypothesis_holds:
            report.skip(_case(X, Y, w1, w2, n=n), "kernel or extropy hypothesis fails")
            continue
        report.add(_margin(out.rss_x, out.rss_y),
                   _case(X, Y, w1, w2, n=n, j_x=out.rss_x, j_y=out.rss_y))
    return _finish(report, witness_dir)


# --------------------------------------------------------------- random pairs

def _scaled_weight(w: WeightFunction, k: float) -> WeightFunction:
    return custom(lambda x, w=w, k=k: k * np.asarray(w(x)), name=f"{k:.6g}*{w.spec}",
                  increasing=w.is_increasing and k > 0, nonnegative=w.is_nonnegative)


def random_pairs(count: int = 50, seed: int = 20240601) -> list[Pair]:
    """Deterministic mixture of distribution/weight pairs.

    About half are built to satisfy the dispersive hypotheses (uniform and
    triangular laws sharing their upper endpoint, and identical pairs); the
    rest are exponential, power and beta pairs, which mostly exercise the
    skip path and the Delta(u) criterion.
    """
    gen = np.random.Generator(np.random.Philox(seed))
    out: list[Pair] = []
    for k in range(count):
        kind = k % 6
        if kind == 0:
            b = gen.uniform(1, 3)
            a = gen.uniform(0, 0.8 * b)
            c = gen.uniform(0, a)
            X, Y = Uniform(a, b), Uniform(c, b)
        elif kind == 1:
            r = gen.uniform(1, 3)
            left = gen.uniform(0, 0.5 * r)
            mode = gen.uniform(left + 0.1 * (r - left), r - 0.1 * (r - left))
            s = gen.uniform(0.3, 1.0)
            X = Triangular(r - s * (r - left), r - s * (r - mode), r)
            Y = Triangular(left, mode, r)
        elif kind == 2:
            X, Y = Exponential(gen.uniform(0.5, 3)), Exponential(gen.uniform(0.5, 3))
        elif kind == 3:
            X, Y = Power(gen.uniform(1, 4)), Power(gen.uniform(1, 4))
        elif kind == 4:
            X, Y = Beta(gen.uniform(1, 4), gen.uniform(1, 4)), Beta(gen.uniform(1, 4),
                                                                   gen.uniform(1, 4))
        else:
            X = [Uniform(0, 1), Power(2.0), Triangular(0, 0.5, 1)][int(gen.integers(3))]
            Y = X
        if gen.random() < 0.5:
            X, Y = Y, X
        base = [UNIT, power(1), power(2), power(0.5), exp_weight()][int(gen.integers(5))]
        roll = gen.random()
        if roll < 0.4:
            w1, w2 = base, base
        elif roll < 0.7:
            w1, w2 = base, _scaled_weight(base, float(gen.uniform(0.3, 1.0)))
        else:
            w1, w2 = base, _scaled_weight(base, float(gen.uniform(1.0, 2.0)))
        out.append((X, Y, w1, w2))
    return out


# ----------------------------------------------------------------- monotonicity

def _orderstat_or_neg_inf(dist, w, i, n, tol) -> float:
    try:
        return order_statistic_extropy(dist, w, i, n, tol).value
    except DivergenceError:
        return -math.inf


def verify_orderstat_monotonicity(dist: Distribution, w: WeightFunction, n_max: int, *,
                                  tol: float = DEFAULT_TOL, grid_size: int = 1024,
                                  witness_dir=None) -> TheoremReport:
    """Order-statistic monotonicity under an IRFR law.

    Part (a), for increasing ``w``: ``J^w(X_{i:n}) >= J^w(X_{i+1:n})`` for all
    ``1 <= i < n <= n_max``.  A divergent extropy counts as ``-inf``.
    Part (b), for decreasing ``w``: ``J^w(X_{i:n}) <= J^w(X_{i:n+1})``.  Part
    (b) is recorded in ``details`` (and is the whole report, marked
    ``record_only``, when ``w`` is not increasing) but never enforced.
    """
    report = TheoremReport("orderstat_monotone")
    try:
        irfr = check_irfr(dist, grid_size)
    except DomainError:
        irfr = None
    if irfr is None or not irfr.holds:
        report.not_applicable = True
        report.details.append({"X": dist.spec, "skipped": "distribution is not IRFR"})
        return report
    lo, hi = dist.support
    grid = default_grid(lo, hi)
    try:
        w.validate(grid)
        weight_ok = w.nonnegative_on(grid)
    except (ValueError, DomainError):
        weight_ok = False
    if not weight_ok or not (w.is_increasing or w.is_decreasing):
        report.not_applicable = True
        report.details.append({"X": dist.spec, "skipped": "weight not monotone and nonnegative"})
        return report

    values = {(i, n): _orderstat_or_neg_inf(dist, w, i, n, tol)
              for n in range(1, n_max + 1) for i in range(1, n + 1)}
    if w.is_increasing:
        for n in range(2, n_max + 1):
            for i in range(1, n):
                a, b = values[(i, n)], values[(i + 1, n)]
                report.add(_margin(b, a), _case(dist, None, w, part="a", i=i, n=n,
                                                j_i=a, j_next=b))
    part_b = TheoremReport("orderstat_monotone_b", record_only=True)
    if w.is_decreasing:
        for n in range(1, n_max):
            for i in range(1, n + 1):
                a, b = values[(i, n)], values[(i, n + 1)]
                part_b.add(_margin(a, b), _case(dist, None, w, part="b", i=i, n=n,
                                                j_n=a, j_next_n=b))
    if not w.is_increasing:
        return _finish(part_b, witness_dir)
    if part_b.cases_run:
        report.details.append({"part_b": part_b.to_dict()})
    return _finish(report, witness_dir)


def _profile_direction(dist: Distribution, w: WeightFunction, grid_size: int) -> str | None:
    lam = np.asarray(LambdaProfile(dist, w)(quantile_grid(grid_size)))
    steps = np.diff(lam) / np.maximum(1.0, np.abs(lam[1:]))
    up, down = bool(np.all(steps >= -1e-9)), bool(np.all(steps <= 1e-9))
    if up and down:
        return "constant"
    return "increasing" if up else ("decreasing" if down else None)


def verify_rss_element_monotone(dist: Distribution, w: WeightFunction, n: int, *,
                                tol: float = DEFAULT_TOL, grid_size: int = 1024,
                                witness_dir=None) -> TheoremReport:
    """Chains over the RSS elements ``J^w(X_{(i:n)i})``, with ``m = ceil(n/2)``.

    Decreasing ``Lambda``: ``J_1 <= ... <= J_m``.  Increasing ``Lambda``:
    ``J_m <= ... <= J_n``.  These stated chains decide ``passed``.  The same
    index ranges with every inequality reversed are evaluated too and stored
    in ``details`` under ``reversed`` (record only).
    """
    report = TheoremReport("rss_element_monotone")
    direction = _profile_direction(dist, w, grid_size)
    if direction is None:
        report.not_applicable = True
        report.details.append({"X": dist.spec, "skipped": "Lambda is not monotone"})
        return report
    m = math.ceil(n / 2)
    J = [order_statistic_extropy(dist, w, i, n, tol).value for i in range(1, n + 1)]
    stated = []
    if direction in ("decreasing", "constant"):
        stated += [(i, i + 1) for i in range(1, m)]
    if direction in ("increasing", "constant"):
        stated += [(i, i + 1) for i in range(m, n)]
    for lo_i, hi_i in stated:
        report.add(_margin(J[lo_i - 1], J[hi_i - 1]),
                   _case(dist, None, w, n=n, direction=direction, lower=lo_i, upper=hi_i,
                         j_lower=J[lo_i - 1], j_upper=J[hi_i - 1]))
    mirror = TheoremReport("rss_element_monotone_reversed", record_only=True)
    for hi_i, lo_i in stated:
        mirror.add(_margin(J[lo_i - 1], J[hi_i - 1]),
                   _case(dist, None, w, n=n, direction=direction, lower=lo_i, upper=hi_i,
                         j_lower=J[lo_i - 1], j_upper=J[hi_i - 1]))
    report.details.append({"values": J, "reversed": mirror.to_dict()})
    return _finish(report, witness_dir)


# -------------------------------------------------------------- transformation

def verify_transformation(dist: Distribution, m: float, c: float, n: int, *,
                          tol: float = DEFAULT_TOL, witness_dir=None) -> TheoremReport:
    """Scale transform ``Z = c X`` with weight ``x**m``.

    ``w(cx)/c <= w(x)`` (``c**(m-1) <= 1``) gives ``J(X_RSS) <= J(Z_RSS)``;
    ``c**(m-1) >= 1`` gives the reverse; both hold when ``c**(m-1) == 1``.
    """
    report = TheoremReport("transformation")
    if not (c > 0) or dist.support.lower < 0:
        report.not_applicable = True
        report.details.append({"X": dist.spec, "skipped": "needs c > 0 and a nonnegative law"})
        return report
    w = power(m)
    z = Scaled(dist, c)
    jx = _rss_or_neg_inf(dist, w, n, tol)
    jz = _rss_or_neg_inf(z, w, n, tol)
    factor = c ** (m - 1)
    if factor <= 1 or math.isclose(factor, 1.0, rel_tol=1e-12):
        report.add(_margin(jx, jz), _case(dist, z, w, n=n, c=c, branch="<=", j_x=jx, j_z=jz))
    if factor >= 1 or math.isclose(factor, 1.0, rel_tol=1e-12):
        report.add(_margin(jz, jx), _case(dist, z, w, n=n, c=c, branch=">=", j_x=jx, j_z=jz))
    return _finish(report, witness_dir)


# ---------------------------------------------------------------- symmetry

def _shifted_control(dist: Distribution) -> Distribution | None:
    lo, hi = dist.support
    if isinstance(dist, Uniform):
        return Uniform(0.0, hi - lo)
    if isinstance(dist, Triangular):
        return Triangular(0.0, dist.mode - lo, hi - lo)
    return None


def _is_symmetric(dist: Distribution, grid_size: int = 1024) -> bool:
    lo, hi = dist.support
    if not math.isclose(lo, -hi, rel_tol=1e-12, abs_tol=1e-15):
        return False
    x = default_grid(0.0, hi if math.isfinite(hi) else 50.0, grid_size)
    return bool(np.allclose(dist.pdf(x), dist.pdf(-x), rtol=1e-10, atol=1e-14))


def verify_symmetry_characterization(dist: Distribution, w: WeightFunction,
                                     odd_n_list: Sequence[int], *, control: Distribution | None = None,
                                     tol: float = DEFAULT_TOL, witness_dir=None) -> TheoremReport:
    """Symmetric law about 0 and odd weight: ``J^w(X_RSS^(n)) = 0`` for odd n.

    A shifted copy of ``dist`` (or ``control``) is also run at every ``n``
    and must give ``|value| > 1e-3``.
    """
    report = TheoremReport("symmetry_characterization")
    bad_n = [k for k in odd_n_list if int(k) != k or k < 1 or k % 2 == 0]
    if bad_n:
        raise DomainError(f"odd_n_list must hold odd positive integers, got {bad_n}")
    grid = default_grid(*dist.support)
    try:
        odd = w.is_odd and bool(np.allclose(w(-grid), -np.asarray(w(grid)), rtol=1e-12,
                                            atol=1e-15))
    except DomainError:
        odd = False
    if not odd or not _is_symmetric(dist):
        report.not_applicable = True
        report.details.append({"X": dist.spec, "skipped": "needs a symmetric law and odd weight"})
        return report
    control = control if control is not None else _shifted_control(dist)
    for k in odd_n_list:
        v = rss_extropy(dist, w, int(k), tol, cross_check=False).value
        report.add(_SYMMETRY_ZERO - abs(v), _case(dist, None, w, n=int(k), role="symmetric", value=v))
        if control is not None:
            cv = rss_extropy(control, w, int(k), tol, cross_check=False).value
            report.add(abs(cv) - _CONTROL_NONZERO,
                       _case(control, None, w, n=int(k), role="control", value=cv))
    return _finish(report, witness_dir)


# ---------------------------------------------------------------------- bound

def verify_bound(dist: Distribution, w: WeightFunction, n_list: Sequence[int], *,
                 tol: float = DEFAULT_TOL, witness_dir=None) -> TheoremReport:
    """``J^w(X_RSS)/J^w(X_SRS) <= rss_srs_ratio_bound(n)`` for each ``n >= 2``."""
    report = TheoremReport("rss_srs_bound")
    for k in n_list:
        k = int(k)
        if k < 2:
            report.skip(_case(dist, None, w, n=k), "bound needs n >= 2")
            continue
        try:
            rss = rss_extropy(dist, w, k, tol, cross_check=False).value
            srs = srs_extropy(dist, w, k, tol).value
        except QuadratureError as exc:
            report.skip(_case(dist, None, w, n=k), f"extropy not finite: {type(exc).__name__}")
            continue
        if srs == 0.0 or not math.isfinite(srs):
            report.skip(_case(dist, None, w, n=k), "SRS extropy is zero")
            continue
        bound = rss_srs_ratio_bound(k)
        q = rss / srs
        report.add(bound - q, _case(dist, None, w, n=k, ratio=q, bound=bound))
    return _finish(report, witness_dir)
