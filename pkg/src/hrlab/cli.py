"""Command-line driver, run configuration, and CSV/JSON reporting.

Every run resolves its flags into a RunConfig, which is echoed verbatim into
the output (a ``config`` column in CSV, a ``config`` object in JSON) together
with the artifact version, so any result file identifies the exact experiment
that produced it.  Identical (config, seed, version) produce byte-identical
output regardless of worker count.

Exit codes: 0 verification passed, 1 verification failed, 2 usage or
configuration error.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .errors import HrlabError
from .evd_core import MixtureParams, as_param, hr_cdf, hr_exponent
from .experiments import (
    Coupling,
    aslt_average,
    aslt_bound_rate,
    comparison_bound_series,
    empirical_max_law,
    empirical_maxmin_law,
    mixture_limit_cdf,
    sup_distance,
    univariate_mixture_cdf,
)
from .gauss_arrays import StrongFactorModel, WeakAR1Model
from .seeding import SeedLineage

SEED_ENV_VAR = "HREXT_SEED"

_TUPLE_FIELDS = ("tau", "n_grid", "grid", "grid4", "points")


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved run parameters; round-trips losslessly through to_dict."""

    command: str
    seed: int
    format: str = "csv"
    tol: float | None = None
    lam: float | None = None
    phi: float | None = None
    tau: tuple[float, float, float] | None = None
    n: int | None = None
    n_grid: tuple[int, ...] | None = None
    reps: int | None = None
    grid: tuple[float, float, int] | None = None
    grid4: tuple[float, ...] | None = None
    nodes: int | None = None
    kind: str | None = None
    epsilon: float | None = None
    coupling: str = "indep"
    points: tuple[tuple[float, float], ...] | None = None
    nmax: int | None = None
    seeds: int | None = None
    x: float | None = None
    y: float | None = None
    marginal_tol: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        coerced = dict(data)
        for name in _TUPLE_FIELDS:
            if coerced.get(name) is not None:
                val = coerced[name]
                if name == "points":
                    coerced[name] = tuple(tuple(p) for p in val)
                else:
                    coerced[name] = tuple(val)
        return cls(**coerced)


# ---------------------------------------------------------------------------
# flag parsing helpers (argparse type= callables raise ArgumentTypeError -> exit 2)
# ---------------------------------------------------------------------------

def _parse_lambda(text: str) -> float:
    t = text.strip().lower()
    if t in ("inf", "infinity", "+inf"):
        return math.inf
    try:
        value = float(t)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid dependence parameter {text!r}") from exc
    if math.isnan(value) or value < 0.0:
        raise argparse.ArgumentTypeError(f"dependence parameter must be >= 0, got {text!r}")
    return value


def _parse_grid(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError(f"grid must be lo:hi[:count], got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        count = int(parts[2]) if len(parts) == 3 else (1 if lo == hi else 2)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"grid must be lo:hi[:count], got {text!r}") from exc
    if hi < lo or count < 1 or (count == 1 and hi != lo):
        raise argparse.ArgumentTypeError(f"degenerate grid spec {text!r}")
    return (lo, hi, count)


def _parse_tau(text: str) -> tuple[float, float, float]:
    try:
        parts = tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"tau must be t11,t22,t12, got {text!r}") from exc
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"tau must have exactly three entries, got {text!r}")
    return parts


def _parse_ngrid(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(float(v)) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"ngrid must be comma-separated sizes, got {text!r}") from exc


def _parse_floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}") from exc


def _parse_points(text: str) -> tuple[tuple[float, float], ...]:
    out = []
    for chunk in text.split(";"):
        vals = _parse_floats(chunk)
        if len(vals) != 2:
            raise argparse.ArgumentTypeError(f"each point must be x,y; got {chunk!r}")
        out.append(vals)
    return tuple(out)


def _parse_coupling(text: str) -> str:
    t = text.strip()
    if t == "indep":
        return t
    if t.startswith("shared:"):
        try:
            c = float(t.split(":", 1)[1])
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"coupling must be indep or shared:C, got {text!r}") from exc
        if not 0.0 <= c < 1.0:
            raise argparse.ArgumentTypeError(f"shared coupling weight must be in [0,1), got {c}")
        return t
    raise argparse.ArgumentTypeError(f"coupling must be indep or shared:C, got {text!r}")


def _coupling_of(cfg: RunConfig) -> Coupling:
    if cfg.coupling == "indep":
        return Coupling()
    return Coupling("shared", float(cfg.coupling.split(":", 1)[1]))


def _axis(grid: tuple[float, float, int]) -> np.ndarray:
    lo, hi, count = grid
    return np.linspace(lo, hi, count)


def _resolve_seed(ns) -> int:
    if ns.seed is not None:
        return ns.seed
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise HrlabError(f"{SEED_ENV_VAR} must be an integer, got {env!r}") from exc
    return 0


# ---------------------------------------------------------------------------
# report writing
# ---------------------------------------------------------------------------

def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _config_json(cfg: RunConfig) -> str:
    return json.dumps(cfg.to_dict(), sort_keys=True, separators=(",", ":"))


def render_csv(cfg: RunConfig, table: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    columns = list(table[0].keys()) if table else []
    writer.writerow(columns + ["artifact_version", "config"])
    meta = [__version__, _config_json(cfg)]
    for row in table:
        writer.writerow([_csv_cell(row[c]) for c in columns] + meta)
    return buf.getvalue()


def render_json(cfg: RunConfig, table: list[dict], summary: dict, passed) -> str:
    report = {
        "artifact_version": __version__,
        "command": cfg.command,
        "config": cfg.to_dict(),
        "passed": passed,
        "summary": summary,
        "table": table,
    }
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def emit(cfg: RunConfig, table: list[dict], summary: dict, passed,
         out: str | None) -> None:
    text = (
        render_csv(cfg, table)
        if cfg.format == "csv"
        else render_json(cfg, table, summary, passed)
    )
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _branch_label(lam: float) -> str:
    p = as_param(lam)
    return "zero" if p.is_zero else ("inf" if p.is_inf else "finite")


def cmd_hr_eval(cfg: RunConfig, out: str | None = None, workers: int = 1) -> int:
    axis = _axis(cfg.grid)
    label = _branch_label(cfg.lam)
    table = [
        {
            "x": float(x),
            "y": float(y),
            "hr_cdf": hr_cdf(cfg.lam, x, y),
            "exponent": hr_exponent(cfg.lam, x, y),
            "lambda_branch": label,
        }
        for x in axis
        for y in axis
    ]
    emit(cfg, table, {"rows": len(table)}, None, out)
    return 0


def _weak_model(cfg: RunConfig) -> WeakAR1Model:
    if cfg.phi is None or cfg.lam is None:
        raise HrlabError("this command needs --lambda and --phi")
    return WeakAR1Model(cfg.lam, cfg.phi)


def _strong_model(cfg: RunConfig) -> StrongFactorModel:
    if cfg.tau is None or cfg.lam is None:
        raise HrlabError("this command needs --lambda and --tau t11,t22,t12")
    t11, t22, t12 = cfg.tau
    return StrongFactorModel(MixtureParams(t11, t22, t12, cfg.lam))


def cmd_verify_weak(cfg: RunConfig, out: str | None = None, workers: int = 1) -> int:
    model = _weak_model(cfg)
    baseline = WeakAR1Model(cfg.lam, 0.0)
    axis = _axis(cfg.grid)
    root = SeedLineage(cfg.seed)
    emp = empirical_max_law(model, cfg.n, cfg.reps, (axis, axis), root.child(0), workers)
    base = empirical_max_law(baseline, cfg.n, cfg.reps, (axis, axis), root.child(1), workers)
    theory = lambda X, Y: hr_cdf(cfg.lam, X, Y)  # noqa: E731
    d_dep = sup_distance(emp, theory)
    d_base = sup_distance(base, theory)
    band = 3.0 * math.sqrt(math.log(2.0 * axis.size**2) / (2.0 * cfg.reps))
    threshold = cfg.tol if cfg.tol is not None else d_base + band
    passed = d_dep <= threshold
    table = []
    for i, x in enumerate(axis):
        for j, y in enumerate(axis):
            t = hr_cdf(cfg.lam, x, y)
            table.append(
                {
                    "x": float(x),
                    "y": float(y),
                    "empirical": float(emp.cdf[i, j]),
                    "baseline_empirical": float(base.cdf[i, j]),
                    "theory": t,
                    "abs_err": abs(emp.cdf[i, j] - t),
                    "sup_distance": d_dep,
                    "baseline_distance": d_base,
                    "threshold": threshold,
                    "passed": passed,
                }
            )
    summary = {
        "sup_distance": d_dep,
        "baseline_distance": d_base,
        "mc_band": band,
        "threshold": threshold,
    }
    emit(cfg, table, summary, passed, out)
    return 0 if passed else 1


def cmd_verify_strong(cfg: RunConfig, out: str | None = None, workers: int = 1) -> int:
    model = _strong_model(cfg)
    mp = model.mix
    axis = _axis(cfg.grid)
    gy = np.append(axis, np.inf)  # the +inf column carries the x-marginal
    root = SeedLineage(cfg.seed)
    emp = empirical_max_law(model, cfg.n, cfg.reps, (axis, gy), root.child(0), workers)
    nodes = cfg.nodes or 128
    theory = np.array(
        [[mixture_limit_cdf(mp, x, y, nodes) for y in axis] for x in axis]
    )
    marginal_theory = np.array([univariate_mixture_cdf(mp.tau11, x, nodes) for x in axis])
    d_biv = float(np.max(np.abs(emp.cdf[:, :-1] - theory)))
    d_marg = float(np.max(np.abs(emp.cdf[:, -1] - marginal_theory)))
    tol = cfg.tol if cfg.tol is not None else 0.04
    mtol = cfg.marginal_tol if cfg.marginal_tol is not None else 0.03
    passed = d_biv <= tol and d_marg <= mtol
    table = []
    for i, x in enumerate(axis):
        for j, y in enumerate(axis):
            table.append(
                {
                    "x": float(x),
                    "y": float(y),
                    "empirical": float(emp.cdf[i, j]),
                    "mixture": float(theory[i, j]),
                    "abs_err": float(abs(emp.cdf[i, j] - theory[i, j])),
                    "sup_distance": d_biv,
                    "marginal_distance": d_marg,
                    "passed": passed,
                }
            )
    for i, x in enumerate(axis):
        table.append(
            {
                "x": float(x),
                "y": math.inf,
                "empirical": float(emp.cdf[i, -1]),
                "mixture": float(marginal_theory[i]),
                "abs_err": float(abs(emp.cdf[i, -1] - marginal_theory[i])),
                "sup_distance": d_biv,
                "marginal_distance": d_marg,
                "passed": passed,
            }
        )
    summary = {
        "sup_distance": d_biv,
        "marginal_distance": d_marg,
        "tol": tol,
        "marginal_tol": mtol,
    }
    emit(cfg, table, summary, passed, out)
    return 0 if passed else 1


def cmd_verify_maxmin(cfg: RunConfig, out: str | None = None, workers: int = 1) -> int:
    model = _weak_model(cfg)
    vals = np.asarray(cfg.grid4, dtype=float)
    axes = (vals, vals, vals, vals)
    emp = empirical_maxmin_law(
        model, cfg.n, cfg.reps, axes, SeedLineage(cfg.seed).child(0), workers
    )
    tol = cfg.tol if cfg.tol is not None else 0.04
    table = []
    worst = 0.0
    for i1, x1 in enumerate(vals):
        for i2, x2 in enumerate(vals):
            for j1, y1 in enumerate(vals):
                for j2, y2 in enumerate(vals):
                    t = hr_cdf(cfg.lam, x1, x2) * hr_cdf(cfg.lam, y1, y2)
                    e = float(emp.prob[i1, i2, j1, j2])
                    worst = max(worst, abs(e - t))
                    table.append(
                        {
                            "x1": float(x1), "x2": float(x2),
                            "y1": float(y1), "y2": float(y2),
                            "empirical": e, "theory": t, "abs_err": abs(e - t),
                        }
                    )
    passed = worst <= tol
    for row in table:
        row["max_abs_err"] = worst
        row["passed"] = passed
    emit(cfg, table, {"max_abs_err": worst, "tol": tol}, passed, out)
    return 0 if passed else 1


def cmd_verify_aslt(cfg: RunConfig, out: str | None = None, workers: int = 1) -> int:
    model = _weak_model(cfg)
    coupling = _coupling_of(cfg)
    points = cfg.points or ((0.0, 0.0), (1.0, 1.0))
    mm_points = tuple((x, y, x, y) for x, y in points)
    tol = cfg.tol if cfg.tol is not None else 0.12
    n_seeds = cfg.seeds or 10
    root = SeedLineage(cfg.seed)
    paths = [
        aslt_average(model, coupling, cfg.nmax, points, root.child(s), maxmin_points=mm_points)
        for s in range(n_seeds)
    ]
    cps = paths[0].checkpoints
    targets = [hr_cdf(cfg.lam, x, y) for x, y in points]
    mm_targets = [hr_cdf(cfg.lam, q[0], q[1]) * hr_cdf(cfg.lam, q[2], q[3]) for q in mm_points]

    worst = 0.0
    ceiling_ok = True
    table = []
    for s, path in enumerate(paths):
        for kind, pts, avgs, tgts in (
            ("max", points, path.averages, targets),
            ("maxmin", mm_points, path.maxmin_averages, mm_targets),
        ):
            for ip, point in enumerate(pts):
                for ic, cp in enumerate(cps):
                    avg = float(avgs[ip, ic])
                    if avg > path.ceiling[ic] + 1e-12:
                        ceiling_ok = False
                    if cp == cfg.nmax:
                        worst = max(worst, abs(avg - tgts[ip]))
                    table.append(
                        {
                            "seed_index": s,
                            "kind": kind,
                            "point": ",".join(format(v, "g") for v in point),
                            "checkpoint": int(cp),
                            "average": avg,
                            "target": float(tgts[ip]),
                            "ceiling": float(path.ceiling[ic]),
                        }
                    )

    # cross-seed concentration: std at n_max strictly below std at n_max/4
    i_quarter = cps.index(cfg.nmax // 4) if cfg.nmax // 4 in cps else 0
    i_final = len(cps) - 1
    shrink_ok = True
    for ip in range(len(points)):
        final = np.std([p.averages[ip, i_final] for p in paths], ddof=1)
        quarter = np.std([p.averages[ip, i_quarter] for p in paths], ddof=1)
        if not final < quarter:
            shrink_ok = False
    passed = worst <= tol and shrink_ok and ceiling_ok
    summary = {
        "max_final_deviation": worst,
        "tol": tol,
        "std_shrinks": shrink_ok,
        "ceiling_ok": ceiling_ok,
        "checkpoints": [int(c) for c in cps],
    }
    emit(cfg, table, summary, passed, out)
    return 0 if passed else 1


def cmd_verify_bounds(cfg: RunConfig, out: str | None = None, workers: int = 1) -> int:
    kind = cfg.kind or "L1"
    x = cfg.x if cfg.x is not None else 3.0
    y = cfg.y if cfg.y is not None else 3.0
    if kind == "L2":
        model = _strong_model(cfg)
    else:
        model = _weak_model(cfg) if cfg.phi is not None else _strong_model(cfg)

    if kind in ("L1", "L2"):
        series = comparison_bound_series(model, kind, x, y, cfg.n_grid)
        values = series.values
        if kind == "L1":
            tol = cfg.tol if cfg.tol is not None else 1e-2
            decreasing = all(a > b for a, b in zip(values, values[1:]))
            passed = decreasing and values[-1] < tol
            summary = {
                "kind": kind, "final_value": values[-1], "tol": tol,
                "strictly_decreasing": decreasing, "omega_rule": series.omega_rule,
            }
        else:
            tol = cfg.tol if cfg.tol is not None else 1e-12
            passed = max(values) <= tol
            summary = {
                "kind": kind, "max_value": max(values), "tol": tol,
                "omega_rule": series.omega_rule,
            }
        table = [
            {"n": int(n), "value": float(v), "kind": kind, "passed": passed}
            for n, v in zip(series.n_grid, values)
        ]
        emit(cfg, table, summary, passed, out)
        return 0 if passed else 1

    if kind != "rate":
        raise HrlabError(f"--kind must be L1, L2 or rate, got {kind!r}")
    epsilon = cfg.epsilon if cfg.epsilon is not None else 0.1
    report = aslt_bound_rate(model, _coupling_of(cfg), epsilon, cfg.n_grid, x, y)
    passed = report.bounded
    table = [
        {
            "n": int(n),
            "within_row_value": float(vw),
            "ratio": float(r),
            "cross_row_value": float(vc),
            "passed": passed,
        }
        for n, vw, r, vc in zip(
            report.within_row.n_grid, report.within_row.values,
            report.ratios, report.cross_row.values,
        )
    ]
    summary = {
        "kind": kind,
        "epsilon": epsilon,
        "bounded": report.bounded,
        "max_ratio": max(report.ratios),
        "omega_rule": report.within_row.omega_rule,
    }
    emit(cfg, table, summary, passed, out)
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# argument parser
# ---------------------------------------------------------------------------

def _add_common(p):
    p.add_argument("--seed", type=int, default=None,
                   help=f"master seed (falls back to ${SEED_ENV_VAR}, then 0)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--tol", type=float, default=None, help="override the pass threshold")
    p.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hrlab",
        description="Bivariate Husler-Reiss laboratory: evaluation and limit-law verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("hr-eval", help="tabulate the bivariate CDF and its exponent")
    pe.add_argument("--lambda", dest="lam", type=_parse_lambda, required=True)
    pe.add_argument("--grid", type=_parse_grid, default=(-2.0, 4.0, 9))
    _add_common(pe)
    pe.set_defaults(make=lambda ns: RunConfig(
        command="hr-eval", seed=_resolve_seed(ns), format=ns.format,
        tol=ns.tol, lam=ns.lam, grid=ns.grid,
    ), run=cmd_hr_eval)

    pv = sub.add_parser("verify", help="confront simulation with a limit law")
    vsub = pv.add_subparsers(dest="law", required=True)

    pw = vsub.add_parser("weak", help="weak-dependence limit (calibrated against the iid baseline)")
    pw.add_argument("--lambda", dest="lam", type=_parse_lambda, required=True)
    pw.add_argument("--phi", type=float, required=True)
    pw.add_argument("--n", type=int, default=2000)
    pw.add_argument("--reps", type=int, default=10000)
    pw.add_argument("--grid", type=_parse_grid, default=(-2.0, 4.0, 9))
    _add_common(pw)
    pw.set_defaults(make=lambda ns: RunConfig(
        command="verify-weak", seed=_resolve_seed(ns), format=ns.format,
        tol=ns.tol, lam=ns.lam, phi=ns.phi, n=ns.n,
        reps=ns.reps, grid=ns.grid,
    ), run=cmd_verify_weak)

    ps = vsub.add_parser("strong", help="strong-dependence Gaussian-mixture limit")
    ps.add_argument("--lambda", dest="lam", type=_parse_lambda, required=True)
    ps.add_argument("--tau", type=_parse_tau, required=True, metavar="T11,T22,T12")
    ps.add_argument("--n", type=int, default=2000)
    ps.add_argument("--reps", type=int, default=10000)
    ps.add_argument("--grid", type=_parse_grid, default=(-2.0, 4.0, 9))
    ps.add_argument("--nodes", type=int, default=128)
    ps.add_argument("--marginal-tol", dest="marginal_tol", type=float, default=None)
    _add_common(ps)
    ps.set_defaults(make=lambda ns: RunConfig(
        command="verify-strong", seed=_resolve_seed(ns), format=ns.format,
        tol=ns.tol, lam=ns.lam, tau=ns.tau, n=ns.n,
        reps=ns.reps, grid=ns.grid, nodes=ns.nodes, marginal_tol=ns.marginal_tol,
    ), run=cmd_verify_strong)

    pm = vsub.add_parser("maxmin", help="asymptotic independence of maxima and minima")
    pm.add_argument("--lambda", dest="lam", type=_parse_lambda, required=True)
    pm.add_argument("--phi", type=float, required=True)
    pm.add_argument("--n", type=int, default=2000)
    pm.add_argument("--reps", type=int, default=20000)
    pm.add_argument("--grid4", type=_parse_floats, default=(0.5, 1.5),
                    help="comma-separated axis values, used on all four axes")
    _add_common(pm)
    pm.set_defaults(make=lambda ns: RunConfig(
        command="verify-maxmin", seed=_resolve_seed(ns), format=ns.format,
        tol=ns.tol, lam=ns.lam, phi=ns.phi, n=ns.n,
        reps=ns.reps, grid4=ns.grid4,
    ), run=cmd_verify_maxmin)

    pa = vsub.add_parser("aslt", help="almost-sure limit theorem along simulated paths")
    pa.add_argument("--lambda", dest="lam", type=_parse_lambda, required=True)
    pa.add_argument("--phi", type=float, required=True)
    pa.add_argument("--nmax", type=int, default=20000)
    pa.add_argument("--seeds", type=int, default=10)
    pa.add_argument("--points", type=_parse_points, default=((0.0, 0.0), (1.0, 1.0)),
                    metavar="X,Y;X,Y;...")
    pa.add_argument("--coupling", type=_parse_coupling, default="indep",
                    help="indep or shared:C with C in [0,1)")
    _add_common(pa)
    pa.set_defaults(make=lambda ns: RunConfig(
        command="verify-aslt", seed=_resolve_seed(ns), format=ns.format,
        tol=ns.tol, lam=ns.lam, phi=ns.phi, nmax=ns.nmax,
        seeds=ns.seeds, points=ns.points, coupling=ns.coupling,
    ), run=cmd_verify_aslt)

    pb = vsub.add_parser("bounds", help="comparison-lemma bound series (exact sums)")
    pb.add_argument("--kind", choices=("L1", "L2", "rate"), default="L1")
    pb.add_argument("--lambda", dest="lam", type=_parse_lambda, required=True)
    pb.add_argument("--phi", type=float, default=None)
    pb.add_argument("--tau", type=_parse_tau, default=None, metavar="T11,T22,T12")
    pb.add_argument("--ngrid", dest="n_grid", type=_parse_ngrid, required=True,
                    metavar="N1,N2,...")
    pb.add_argument("--x", type=float, default=3.0)
    pb.add_argument("--y", type=float, default=3.0)
    pb.add_argument("--epsilon", type=float, default=0.1)
    pb.add_argument("--coupling", type=_parse_coupling, default="indep")
    _add_common(pb)
    pb.set_defaults(make=lambda ns: RunConfig(
        command="verify-bounds", seed=_resolve_seed(ns), format=ns.format,
        tol=ns.tol, lam=ns.lam, phi=ns.phi, tau=ns.tau,
        n_grid=ns.n_grid, kind=ns.kind, epsilon=ns.epsilon, coupling=ns.coupling,
        x=ns.x, y=ns.y,
    ), run=cmd_verify_bounds)

    return parser


# flags whose values may start with '-' (grid specs, point lists); argparse
# would otherwise read the value as an option string
_DASH_VALUE_FLAGS = ("--grid", "--grid4", "--points", "--ngrid", "--tau", "--x", "--y")


def _merge_dash_values(argv):
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok in _DASH_VALUE_FLAGS and nxt is not None and nxt.startswith("-"):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        ns = parser.parse_args(_merge_dash_values(argv))
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        cfg = ns.make(ns)
        return ns.run(cfg, out=ns.out, workers=ns.workers)
    except HrlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
