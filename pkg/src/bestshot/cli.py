"""Command-line front end.

Subcommands: cutoff, bids, compare, simulate, audit, figures, check.
Flags override values from an optional ``key = value`` config file
(``--config``), which in turn overrides built-in defaults.  All tabular
output is CSV with a header row, 12 significant digits, LF line endings.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from bestshot import checks, figures, metrics, sim
from bestshot.dist import parse_dist_spec
from bestshot.entry import (
    ContestParams,
    Policy,
    fd_sufficient_condition_holds,
    solve_entry,
)
from bestshot.numerics import DEFAULT_TOL

DEFAULTS = {
    "n": 2,
    "m": 2,
    "omega": 0.0,
    "dist": "power:alpha=1",
    "tol": DEFAULT_TOL,
    "seed": 12345,
    "reps": 100_000,
    "workers": 1,
}


def _read_config(path: str) -> dict[str, str]:
    cfg = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SystemExit(f"cannot read config file {path}: {exc}")
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise SystemExit(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        cfg[key.strip()] = value.strip()
    return cfg


_CASTS = {
    "n": int,
    "m": int,
    "omega": float,
    "tol": float,
    "seed": int,
    "reps": int,
    "workers": int,
    "dist": str,
    "policy": str,
    "grid": str,
    "figure": str,
    "suite": str,
    "out": str,
}


def _resolve(args: argparse.Namespace) -> argparse.Namespace:
    """Fill unset flags from the config file, then from defaults."""
    cfg = _read_config(args.config) if getattr(args, "config", None) else {}
    for key, raw in cfg.items():
        if key not in _CASTS:
            raise SystemExit(f"config: unknown key {key!r}")
        if getattr(args, key, None) is None and hasattr(args, key):
            try:
                setattr(args, key, _CASTS[key](raw))
            except ValueError:
                raise SystemExit(f"config: bad value for {key!r}: {raw!r}")
    for key, value in DEFAULTS.items():
        if getattr(args, key, None) is None and hasattr(args, key):
            setattr(args, key, value)
    return args


def _build_params(args, parser) -> ContestParams:
    if args.n < 2:
        parser.error("--n must be an integer >= 2")
    if args.m < 1:
        parser.error("--m must be an integer >= 1")
    if args.tol <= 0 or args.tol > 1e-2:
        parser.error("--tol must lie in (0, 1e-2]")
    try:
        dist = parse_dist_spec(args.dist)
    except ValueError as exc:
        parser.error(f"--dist: {exc}")
    if not 0.0 <= args.omega < dist.support_hi:
        parser.error(
            f"--omega must satisfy 0 <= omega < v_bar = {dist.support_hi}"
        )
    return ContestParams(args.n, args.m, args.omega, dist)


def _emit(args, header, rows) -> None:
    lines = [",".join(header)]
    lines += [",".join(figures.format_value(x) for x in row) for row in rows]
    text = "\n".join(lines) + "\n"
    out = getattr(args, "out", None)
    if out:
        try:
            Path(out).write_text(text, encoding="utf-8", newline="\n")
        except OSError as exc:
            raise SystemExit(f"cannot write {out}: {exc}")
    else:
        sys.stdout.write(text)


def _add_common(sub, *, reps=False, seed=False, workers=False):
    sub.add_argument("--n", type=int, default=None, help="number of groups (>= 2)")
    sub.add_argument("--m", type=int, default=None, help="players per group (>= 1)")
    sub.add_argument("--omega", type=float, default=None, help="outside option")
    sub.add_argument(
        "--dist",
        type=str,
        default=None,
        help="power:alpha=<x> | pareto:p=<x> | tpareto:p=<x>,vmax=<y>",
    )
    sub.add_argument("--tol", type=float, default=None, help="quadrature tolerance")
    sub.add_argument("--out", type=str, default=None, help="output file (default stdout)")
    sub.add_argument("--config", type=str, default=None, help="key = value config file")
    if reps:
        sub.add_argument("--reps", type=int, default=None, help="replications")
    if seed:
        sub.add_argument("--seed", type=int, default=None, help="master seed")
    if workers:
        sub.add_argument("--workers", type=int, default=None, help="worker processes")


def _policy(args, parser, allowed) -> Policy:
    try:
        policy = Policy(args.policy)
    except ValueError:
        parser.error(f"--policy must be one of {[p.value for p in allowed]}")
    if policy not in allowed:
        parser.error(f"--policy must be one of {[p.value for p in allowed]}")
    return policy


def cmd_cutoff(args, parser) -> int:
    params = _build_params(args, parser)
    policy = _policy(args, parser, (Policy.ND, Policy.WD, Policy.FD, Policy.IND))
    outcome = solve_entry(params, policy, args.tol)
    suff = fd_sufficient_condition_holds(params)
    _emit(
        args,
        ("policy", "n", "m", "omega", "dist", "cutoff", "q", "boundary",
         "fd_sufficient_condition"),
        [(
            policy.value, params.n, params.m, params.omega,
            params.dist.spec_string(), outcome.cutoff, outcome.q,
            outcome.boundary.value,
            "na" if suff is None else str(suff).lower(),
        )],
    )
    return 0


def cmd_bids(args, parser) -> int:
    from bestshot.sim import _cumulative_bids

    params = _build_params(args, parser)
    policy = _policy(args, parser, (Policy.ND, Policy.WD, Policy.IND))
    if not params.dist.has_bounded_support:
        parser.error("--dist: bid grids need a bounded support")
    try:
        k = int(args.grid)
        if k < 2:
            raise ValueError
    except ValueError:
        parser.error("--grid must be an integer >= 2")
    outcome = solve_entry(params, policy, args.tol)
    v = np.linspace(outcome.cutoff, params.dist.support_hi, k)
    u = np.asarray(params.dist.cdf(v), dtype=float)
    bids = _cumulative_bids(params, policy, u[0], u)
    _emit(args, ("v", "bid"), list(zip(v.tolist(), bids.tolist())))
    return 0


def cmd_compare(args, parser) -> int:
    params = _build_params(args, parser)
    rows = []
    for pm in metrics.compare_policies(params, args.tol):
        rows.append(
            (
                pm.policy.value, params.n, params.m, params.omega,
                params.dist.spec_string(), pm.entry.cutoff, pm.entry.q,
                pm.b_aggregate, pm.b_total, pm.b_max,
            )
        )
    _emit(
        args,
        ("policy", "n", "m", "omega", "dist", "cutoff", "q",
         "b_aggregate", "b_total", "b_max"),
        rows,
    )
    return 0


def cmd_simulate(args, parser) -> int:
    params = _build_params(args, parser)
    policy = _policy(args, parser, (Policy.ND, Policy.WD, Policy.FD, Policy.IND))
    if args.reps < 2:
        parser.error("--reps must be >= 2")
    if args.workers < 1:
        parser.error("--workers must be >= 1")
    outcome = solve_entry(params, policy, args.tol)
    report = sim.simulate(
        params, policy, outcome, args.reps, args.seed, workers=args.workers
    )
    header = [
        "policy", "n", "m", "omega", "dist", "reps", "seed", "cutoff",
        "b_aggregate", "se_aggregate", "b_total", "se_total", "b_max", "se_max",
        "frac_zero_active", "frac_one_active",
    ] + [f"winner_freq_{i}" for i in range(params.n)]
    row = [
        report.policy.value, params.n, params.m, params.omega,
        params.dist.spec_string(), report.reps, report.master_seed,
        report.cutoff, report.b_aggregate, report.se_aggregate,
        report.b_total, report.se_total, report.b_max, report.se_max,
        report.frac_zero_active, report.frac_one_active,
    ] + list(report.winner_freq)
    _emit(args, header, [row])
    return 0


def cmd_audit(args, parser) -> int:
    params = _build_params(args, parser)
    policy = _policy(args, parser, (Policy.ND, Policy.WD))
    try:
        nv, nvhat = (int(x) for x in args.grid.lower().split("x"))
        if nv < 2 or nvhat < 2:
            raise ValueError
    except ValueError:
        parser.error("--grid must look like 101x1001")
    if not params.dist.has_bounded_support:
        parser.error("--dist: the audit needs a bounded support")
    lo = solve_entry(params, policy, args.tol).cutoff
    hi = params.dist.support_hi
    regret = sim.best_response_audit(
        params, policy, np.linspace(lo, hi, nv), np.linspace(lo, hi, nvhat)
    )
    limit = 1e-6 * hi
    _emit(
        args,
        ("policy", "n", "m", "omega", "dist", "grid", "max_regret", "limit", "status"),
        [(policy.value, params.n, params.m, params.omega,
          params.dist.spec_string(), f"{nv}x{nvhat}", regret, limit,
          "pass" if regret <= limit else "fail")],
    )
    return 0 if regret <= limit else 1


def cmd_figures(args, parser) -> int:
    if args.out is None:
        parser.error("--out directory is required for figures")
    if args.workers < 1:
        parser.error("--workers must be >= 1")
    ids = figures.FIGURE_IDS if args.figure == "all" else (args.figure,)
    for fid in ids:
        path = figures.generate_figure(fid, args.out, args.tol, args.workers)
        print(f"wrote {path}")
    return 0


def cmd_check(args, parser) -> int:
    # reps/workers reach the simulation suite; other suites own their grids
    try:
        results = checks.run_suite(args.suite, reps=args.reps, workers=args.workers)
    except ValueError as exc:
        parser.error(str(exc))
    failed = 0
    for r in results:
        status = "INFO" if r.passed is None else ("PASS" if r.passed else "FAIL")
        failed += r.hard_failure
        print(f"{status} [{r.suite}] {r.name}: {r.detail}")
    total = sum(1 for r in results if r.passed is not None)
    print(f"# {total - failed}/{total} checks passed")
    return 1 if failed else 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="bestshot",
        description="Best-shot group contest equilibrium laboratory",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("cutoff", help="equilibrium entry cutoff")
    p.add_argument("--policy", type=str, default="nd")
    _add_common(p)
    p.set_defaults(fn=cmd_cutoff)

    p = subs.add_parser("bids", help="equilibrium bid schedule on a grid")
    p.add_argument("--policy", type=str, default="nd")
    p.add_argument("--grid", type=str, default="101", help="number of grid points")
    _add_common(p)
    p.set_defaults(fn=cmd_bids)

    p = subs.add_parser("compare", help="investment metrics per policy")
    _add_common(p)
    p.set_defaults(fn=cmd_compare)

    p = subs.add_parser("simulate", help="Monte Carlo forward play")
    p.add_argument("--policy", type=str, default="nd")
    _add_common(p, reps=True, seed=True, workers=True)
    p.set_defaults(fn=cmd_simulate)

    p = subs.add_parser("audit", help="best-response (regret) audit")
    p.add_argument("--policy", type=str, default="nd")
    p.add_argument("--grid", type=str, default="101x1001")
    _add_common(p)
    p.set_defaults(fn=cmd_audit)

    p = subs.add_parser("figures", help="figure CSV data")
    p.add_argument(
        "--figure", type=str, default="all",
        choices=[*figures.FIGURE_IDS, "all"],
    )
    _add_common(p, workers=True)
    p.set_defaults(fn=cmd_figures)

    p = subs.add_parser("check", help="proposition check suites")
    p.add_argument(
        "--suite", type=str, default="all", help=f"one of {checks.suite_names()}"
    )
    _add_common(p, reps=True, workers=True)
    p.set_defaults(fn=cmd_check)

    args = parser.parse_args(argv)
    args = _resolve(args)
    return args.fn(args, parser)


if __name__ == "__main__":
    sys.exit(main())
