"""Command-line front end.

Subcommands: ``compute`` (single-variable extropy), ``rss``, ``srs``,
``compare``, ``sample``, ``verify`` and ``table``.  Output is JSON (default),
CSV or TSV on stdout, written in one piece.

Exit codes: 0 success, 1 unparseable input, 2 domain or divergence error,
3 a verification suite failed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from collections.abc import Sequence
from dataclasses import dataclass

from . import harness
from .closed_forms import closed_form_for
from .distributions import Distribution, parse_distribution
from .errors import DivergenceError, DomainError, QuadratureError
from .extropy import general_weighted_extropy
from .montecarlo import (RngSpec, mc_general_weighted_extropy, mc_rss_extropy, sample_rss,
                         sample_srs)
from .quadrature import DEFAULT_TOL
from .rss import rss_extropy, srs_extropy
from .weights import WeightFunction, parse_weight

__all__ = ["EXIT_OK", "EXIT_PARSE", "EXIT_DOMAIN", "EXIT_THEOREM", "COMMANDS", "RunConfig",
           "parse_config", "run", "main"]

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_THEOREM = 0, 1, 2, 3
COMMANDS = ("compute", "rss", "srs", "compare", "sample", "verify", "table")
METHODS = ("quad", "closed", "mc")
OUTPUTS = ("json", "csv", "tsv")
SUITES = ("disp", "delta", "orderstat", "transformation", "symmetry", "rss-element", "bound")
FAMILIES = {"power": "power:{}", "exponential": "exp:{}", "pareto": "pareto:{}"}
DEFAULT_DRAWS = 1_000_000

_METHOD_TAG = {"quad": "quadrature", "closed": "closed_form", "mc": "monte_carlo"}


class UsageError(Exception):
    """Bad flags, config or spec strings (exit code 1)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    """Options shared by all commands, in canonical form."""

    command: str
    dist_spec: str | None = None
    weight_spec: str = "unit"
    n: int = 1
    method: str = "quad"
    tol: float = DEFAULT_TOL
    seed: int = 0
    output: str = "json"

    def render(self) -> list[str]:
        """Canonical argument vector; ``parse_config(cfg.render())`` gives
        back ``cfg``."""
        argv = [self.command]
        if self.dist_spec is not None:
            argv += ["--dist", self.dist_spec]
        argv += ["--weight", self.weight_spec, "--n", str(self.n), "--method", self.method,
                 "--tol", repr(self.tol), "--seed", str(self.seed), "--output", self.output]
        return argv


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from None


def _build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = _Parser(prog="xtropy", description="Extropy of SRS and RSS designs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    subs = {}
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON file whose keys mirror the flags")
        p.add_argument("--dist")
        p.add_argument("--weight", default="unit")
        p.add_argument("--n", type=int, default=1)
        p.add_argument("--method", choices=METHODS, default="quad")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", choices=OUTPUTS, default="json")
        p.add_argument("--draws", type=int, default=DEFAULT_DRAWS,
                       help="Monte Carlo draws per factor")
        subs[name] = p
    subs["compare"].add_argument("--dist2")
    subs["compare"].add_argument("--weight2")
    subs["sample"].add_argument("--scheme", choices=("rss", "srs"), default="rss")
    subs["sample"].add_argument("--reps", type=int, default=1)
    v = subs["verify"]
    v.add_argument("--suite", choices=SUITES)
    v.add_argument("--odd-n", type=_int_list, default=[1, 3, 5])
    v.add_argument("--n-list", type=_int_list, default=[2, 3, 4])
    v.add_argument("--n-max", type=int, default=4)
    v.add_argument("--m", type=float, default=1.0)
    v.add_argument("--c", type=float, default=2.0)
    v.add_argument("--pairs", type=int, default=50)
    v.add_argument("--pair-seed", type=int, default=20240601)
    v.add_argument("--witness-dir")
    t = subs["table"]
    t.add_argument("--family", choices=tuple(FAMILIES))
    t.add_argument("--param", type=_float_list, help="theta, rate or alpha values")
    t.add_argument("--m-list", type=_float_list, help="weight exponents; 0 is the unit weight")
    t.add_argument("--n-list", type=_int_list)
    t.add_argument("--mc", action="store_true", help="add a Monte Carlo column")
    return parser, subs


def parse_config(argv: Sequence[str]) -> tuple[RunConfig, argparse.Namespace]:
    """Parse flags, merging a ``--config`` JSON file underneath them.

    Raises:
        UsageError: for bad flags, an unreadable config or unknown keys.
    """
    parser, subs = _build_parser()
    ns = parser.parse_args(list(argv))
    if ns.config:
        try:
            with open(ns.config, encoding="utf-8") as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {ns.config!r}: {exc}") from None
        if not isinstance(cfg, dict):
            raise UsageError("config file must hold a JSON object")
        known = {a.dest for a in subs[ns.command]._actions}
        unknown = sorted(set(k.replace("-", "_") for k in cfg) - known)
        if unknown:
            raise UsageError(f"unknown config key(s): {', '.join(unknown)}")
        subs[ns.command].set_defaults(**{k.replace("-", "_"): v for k, v in cfg.items()})
        ns = parser.parse_args(list(argv))
    dist = None
    if ns.dist is not None:
        dist = _parse_dist(ns.dist).spec
    weight = _parse_w(ns.weight).spec
    if ns.n < 1:
        raise UsageError(f"--n must be a positive integer, got {ns.n}")
    config = RunConfig(ns.command, dist, weight, ns.n, ns.method, ns.tol, ns.seed, ns.output)
    return config, ns


def _parse_dist(text: str) -> Distribution:
    try:
        return parse_distribution(text)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _parse_w(text: str) -> WeightFunction:
    try:
        return parse_weight(text)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


# --------------------------------------------------------------------- output

def _fmt_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, (list, tuple)):
        return ";".join(_fmt_cell(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _json_safe(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, dict):
        return {k: _json_safe(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_safe(x) for x in v]
    return v


def render(rows: list[dict], fmt: str, single: bool) -> str:
    """Render result rows; ``single`` emits one JSON object instead of a list."""
    if fmt == "json":
        body = _json_safe(rows[0] if single and len(rows) == 1 else rows)
        return json.dumps(body, allow_nan=False) + "\n"
    columns: list[str] = []
    for row in rows:
        columns += [k for k in row if k not in columns]
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter="," if fmt == "csv" else "\t", lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def _record(value, error, method, n, dist, weight, **extra) -> dict:
    row = {"value": value, "error": error, "method": method, "n": n, "dist": dist,
           "weight": weight, "theorem_id": None, "pass": None}
    row.update(extra)
    return row


# ------------------------------------------------------------------- commands

def _need_dist(ns) -> Distribution:
    if ns.dist is None:
        raise UsageError(f"{ns.command} needs --dist")
    return _parse_dist(ns.dist)


def _evaluate(kind: str, dist: Distribution, w: WeightFunction, n: int, ns) -> tuple[float, float]:
    rng = RngSpec(ns.seed)
    if ns.method == "closed":
        if kind == "srs":
            raise DomainError("no closed form for the SRS extropy; use --method quad or mc")
        return closed_form_for(dist, w, n).value, 0.0
    if ns.method == "mc":
        if kind == "rss":
            est = mc_rss_extropy(dist, w, n, ns.draws, rng)
            return est.value, est.std_error
        est = mc_general_weighted_extropy(dist, w, ns.draws, rng)
        if kind == "srs" and n > 1:
            mean, se = -2.0 * est.value, 2.0 * est.std_error
            return -0.5 * mean**n, 0.5 * n * abs(mean) ** (n - 1) * se
        return est.value, est.std_error
    if kind == "rss":
        res = rss_extropy(dist, w, n, ns.tol)
    elif kind == "srs":
        res = srs_extropy(dist, w, n, ns.tol)
    else:
        res = general_weighted_extropy(dist, w, ns.tol)
    return res.value, res.error_estimate


def _value_row(kind, dist, w, n, ns) -> tuple[dict, bool]:
    method = _METHOD_TAG[ns.method]
    try:
        value, err = _evaluate(kind, dist, w, n, ns)
    except DivergenceError as exc:
        return _record(None, None, method, n, dist.spec, w.spec, reason=str(exc)), False
    return _record(value, err, method, n, dist.spec, w.spec), True


def _cmd_value(ns, kind: str) -> tuple[list[dict], int]:
    dist, w = _need_dist(ns), _parse_w(ns.weight)
    n = 1 if kind == "compute" else ns.n
    row, ok = _value_row(kind, dist, w, n, ns)
    return [row], EXIT_OK if ok else EXIT_DOMAIN


def _cmd_compare(ns) -> tuple[list[dict], int]:
    X, w1 = _need_dist(ns), _parse_w(ns.weight)
    if ns.dist2 is None:
        raise UsageError("compare needs --dist2")
    Y, w2 = _parse_dist(ns.dist2), _parse_w(ns.weight2 or ns.weight)
    rx, okx = _value_row("rss", X, w1, ns.n, ns)
    ry, oky = _value_row("rss", Y, w2, ns.n, ns)
    rows = [dict(rx, role="X"), dict(ry, role="Y")]
    if okx and oky:
        vx, vy = rx["value"], ry["value"]
        relation = "<" if vx < vy else (">" if vx > vy else "=")
        for r in rows:
            r["relation"] = relation
    return rows, EXIT_OK if okx and oky else EXIT_DOMAIN


def _cmd_sample(ns) -> tuple[list[dict], int]:
    dist = _need_dist(ns)
    if ns.reps < 1:
        raise UsageError(f"--reps must be positive, got {ns.reps}")
    draw = sample_rss if ns.scheme == "rss" else sample_srs
    data = draw(dist, ns.n, RngSpec(ns.seed), size=ns.reps)
    rows = []
    for k, sample in enumerate(data):
        row = {"rep": k, "scheme": ns.scheme, "n": ns.n, "dist": dist.spec, "seed": ns.seed}
        row.update({f"x{i + 1}": float(v) for i, v in enumerate(sample)})
        rows.append(row)
    return rows, EXIT_OK


def _report_row(report: harness.TheoremReport, ns, dist: str | None, weight: str | None) -> dict:
    status = None if report.not_applicable else report.passed
    return {"value": report.worst_margin, "error": None, "method": "quadrature", "n": ns.n,
            "dist": dist, "weight": weight, "theorem_id": report.theorem_id, "pass": status,
            "cases_run": report.cases_run, "cases_passed": report.cases_passed,
            "skipped": report.skipped, "not_applicable": report.not_applicable,
            "record_only": report.record_only, "witness": report.witness}


def _cmd_verify(ns) -> tuple[list[dict], int]:
    if ns.suite is None:
        raise UsageError("verify needs --suite")
    w = _parse_w(ns.weight)
    wd = ns.witness_dir
    if ns.suite in ("disp", "delta"):
        pairs = harness.random_pairs(ns.pairs, ns.pair_seed)
        if ns.suite == "disp":
            report = harness.verify_disp_comparison(pairs, ns.n, tol=ns.tol, witness_dir=wd)
        else:
            report = harness.verify_delta_criterion(pairs, ns.n, tol=ns.tol, witness_dir=wd)
        dist_spec, w_spec = None, None
    else:
        dist = _need_dist(ns)
        dist_spec, w_spec = dist.spec, w.spec
        if ns.suite == "orderstat":
            report = harness.verify_orderstat_monotonicity(dist, w, ns.n_max, tol=ns.tol,
                                                           witness_dir=wd)
        elif ns.suite == "transformation":
            report = harness.verify_transformation(dist, ns.m, ns.c, ns.n, tol=ns.tol,
                                                   witness_dir=wd)
            w_spec = f"pow:{ns.m:g}"
        elif ns.suite == "symmetry":
            report = harness.verify_symmetry_characterization(dist, w, ns.odd_n, tol=ns.tol,
                                                              witness_dir=wd)
        elif ns.suite == "rss-element":
            report = harness.verify_rss_element_monotone(dist, w, ns.n, tol=ns.tol,
                                                         witness_dir=wd)
        else:
            report = harness.verify_bound(dist, w, ns.n_list, tol=ns.tol, witness_dir=wd)
    failed = not report.not_applicable and not report.record_only and not report.passed
    return [_report_row(report, ns, dist_spec, w_spec)], EXIT_THEOREM if failed else EXIT_OK


def _cmd_table(ns) -> tuple[list[dict], int]:
    if ns.family is None:
        raise UsageError("table needs --family")
    params, ms, ns_list = ns.param or [], ns.m_list or [], ns.n_list or []
    if not (params and ms and ns_list):
        raise UsageError("table needs non-empty --param, --m-list and --n-list")
    rows = []
    for p in params:
        dist = _parse_dist(FAMILIES[ns.family].format(repr(float(p))))
        for m in ms:
            w = _parse_w("unit" if m == 0 else f"pow:{m!r}")
            for n in ns_list:
                row = {"family": ns.family, "param": p, "m": m, "n": n, "dist": dist.spec,
                       "weight": w.spec, "quad": None, "quad_error": None, "closed": None}
                if ns.mc:
                    row.update(mc=None, mc_error=None)
                reasons = []
                try:
                    res = rss_extropy(dist, w, n, ns.tol)
                    row["quad"], row["quad_error"] = res.value, res.error_estimate
                except DivergenceError as exc:
                    reasons.append(f"quad: {exc}")
                try:
                    row["closed"] = closed_form_for(dist, w, n).value
                except (DivergenceError, DomainError) as exc:
                    reasons.append(f"closed: {exc}")
                if ns.mc and row["quad"] is not None:
                    try:
                        est = mc_rss_extropy(dist, w, n, ns.draws, RngSpec(ns.seed))
                        row["mc"], row["mc_error"] = est.value, est.std_error
                    except DomainError as exc:
                        reasons.append(f"mc: {exc}")
                present = [row[k] for k in ("quad", "closed", "mc") if row.get(k) is not None]
                row["discrepancy"] = (max(abs(a - b) for a in present for b in present)
                                      if len(present) > 1 else None)
                if reasons:
                    row["reason"] = "; ".join(reasons)
                rows.append(row)
    return rows, EXIT_OK


def run(argv: Sequence[str], out=None, err=None) -> int:
    """Run one command; returns the exit code."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        _, ns = parse_config(argv)
        if ns.command in ("compute", "rss", "srs"):
            rows, code = _cmd_value(ns, ns.command)
        elif ns.command == "compare":
            rows, code = _cmd_compare(ns)
        elif ns.command == "sample":
            rows, code = _cmd_sample(ns)
        elif ns.command == "verify":
            rows, code = _cmd_verify(ns)
        else:
            rows, code = _cmd_table(ns)
    except UsageError as exc:
        err.write(f"xtropy: error: {exc}\n")
        return EXIT_PARSE
    except (DomainError, QuadratureError) as exc:
        err.write(f"xtropy: {type(exc).__name__}: {exc}\n")
        return EXIT_DOMAIN
    single = ns.command in ("compute", "rss", "srs", "verify")
    out.write(render(rows, ns.output, single))
    return code


def main(argv: Sequence[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
