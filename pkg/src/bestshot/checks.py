"""Proposition check suites over parameter grids.

Each suite turns one of the paper-level comparative-statics claims into a
grid of numeric assertions (strict inequalities with explicit margins, or
agreement tolerances).  Suites return :class:`CheckResult` rows; report-only
diagnostics carry ``passed=None`` and never fail a run.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from bestshot import metrics, sim
from bestshot.dist import (
    ParetoDistribution,
    PowerDistribution,
    TruncatedParetoDistribution,
)
from bestshot.entry import (
    ContestParams,
    Policy,
    cutoff_fd,
    cutoff_nd_wd,
    fd_entry_payoff,
    solve_entry,
)

__all__ = ["CheckResult", "SUITES", "run_suite", "suite_names"]

POWER_ALPHAS = (0.5, 1.0, 2.0)
OMEGAS = (0.0, 0.1, 0.4)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool | None  # None marks report-only diagnostics
    detail: str

    @property
    def hard_failure(self) -> bool:
        return self.passed is False


def _params(n: int, m: int, omega: float, alpha: float) -> ContestParams:
    return ContestParams(n, m, omega, PowerDistribution(alpha))


def suite_prop1(tol: float = 1e-10) -> list[CheckResult]:
    """Individual contests: disclosure lowers aggregate investment."""
    out = []
    for n in (2, 3, 5):
        for omega in OMEGAS:
            for alpha in POWER_ALPHAS:
                p = _params(n, 1, omega, alpha)
                nd = metrics.agg_individual_nd(p, tol)
                fd = metrics.agg_individual_fd(p, tol)
                out.append(
                    CheckResult(
                        "prop1",
                        f"n={n} omega={omega} alpha={alpha}",
                        fd < nd - 1e-6,
                        f"B_fd={fd:.9f} < B_nd={nd:.9f}",
                    )
                )
    return out


def suite_prop2(tol: float = 1e-10) -> list[CheckResult]:
    """Group contests: within-group disclosure beats no disclosure."""
    out = []
    for n in (2, 3):
        for m in (2, 3, 4):
            for omega in OMEGAS:
                for alpha in POWER_ALPHAS:
                    p = _params(n, m, omega, alpha)
                    e = cutoff_nd_wd(p)
                    nd = metrics.agg_nd(p, tol, e)
                    wd = metrics.agg_wd(p, tol, e)
                    out.append(
                        CheckResult(
                            "prop2",
                            f"n={n} m={m} omega={omega} alpha={alpha}",
                            wd > nd + 1e-6,
                            f"B_wd={wd:.9f} > B_nd={nd:.9f}",
                        )
                    )
        for omega in OMEGAS:
            for alpha in POWER_ALPHAS:
                p = _params(n, 1, omega, alpha)
                e = cutoff_nd_wd(p)
                gap = abs(metrics.agg_wd(p, tol, e) - metrics.agg_nd(p, tol, e))
                out.append(
                    CheckResult(
                        "prop2",
                        f"m=1 equality n={n} omega={omega} alpha={alpha}",
                        gap <= 1e-10,
                        f"|B_wd - B_nd| = {gap:.2e}",
                    )
                )
    return out


def suite_cutoffs(tol: float = 1e-10) -> list[CheckResult]:
    """FD induces weakly more entry; the cutoff gap vanishes at both ends."""
    out = []
    for n in (2, 3):
        for m in (1, 2, 3, 4):
            for omega in OMEGAS:
                for alpha in POWER_ALPHAS:
                    p = _params(n, m, omega, alpha)
                    e_nd = cutoff_nd_wd(p)
                    e_fd = cutoff_fd(p, tol)
                    diff = e_nd.cutoff - e_fd.cutoff
                    if m > 1 and omega > 0.0:
                        ok = diff > 1e-9
                        rel = f"strict gap {diff:.3e}"
                    else:
                        ok = diff >= -1e-12
                        rel = f"gap {diff:.3e} >= 0"
                    out.append(
                        CheckResult(
                            "cutoffs",
                            f"n={n} m={m} omega={omega} alpha={alpha}",
                            ok,
                            rel,
                        )
                    )
    # endpoint behaviour: the gap vanishes as omega -> 0 and omega -> v_bar
    for n in (2, 3):
        for m in (2, 3):
            for omega in (1e-4, 1.0 - 1e-4):
                p = _params(n, m, omega, 1.0)
                diff = cutoff_nd_wd(p).cutoff - cutoff_fd(p, tol).cutoff
                out.append(
                    CheckResult(
                        "cutoffs",
                        f"endpoint n={n} m={m} omega={omega}",
                        -1e-12 <= diff <= 1e-3,
                        f"gap {diff:.3e} <= 1e-3",
                    )
                )
    # report-only: single-peakedness of the gap in omega (paper figure shape)
    for alpha in (1.0, 3.0):
        p0 = _params(2, 3, 0.0, alpha)
        grid = np.linspace(0.02, 0.98, 25)
        gaps = []
        for omega in grid:
            p = ContestParams(2, 3, float(omega), p0.dist)
            gaps.append(cutoff_nd_wd(p).cutoff - cutoff_fd(p, tol).cutoff)
        g = np.asarray(gaps)
        peaks = int(np.sum((g[1:-1] > g[:-2]) & (g[1:-1] > g[2:])))
        out.append(
            CheckResult(
                "cutoffs",
                f"single-peaked gap alpha={alpha}",
                None,
                f"{peaks} local max on 25-point omega grid (expected 1)",
            )
        )
    return out


def suite_elasticity(tol: float = 1e-10) -> list[CheckResult]:
    """FD beats ND when the power elasticity satisfies alpha >= 1/(m-1)."""
    out = []
    for n in (2, 3):
        for m in (2, 3, 4):
            for omega in OMEGAS:
                for alpha in POWER_ALPHAS:
                    if alpha < 1.0 / (m - 1):
                        continue
                    p = _params(n, m, omega, alpha)
                    nd = metrics.agg_nd(p, tol)
                    fd = metrics.agg_fd(p, tol)
                    out.append(
                        CheckResult(
                            "elasticity",
                            f"n={n} m={m} omega={omega} alpha={alpha}",
                            fd > nd + 1e-9,
                            f"B_fd={fd:.9f} > B_nd={nd:.9f}",
                        )
                    )
    # low-elasticity crossover: FD loses at alpha=0.05, wins at alpha=0.3
    for alpha, sign in ((0.05, -1.0), (0.3, 1.0)):
        p = _params(2, 3, 0.4, alpha)
        diff = metrics.agg_fd(p, tol) - metrics.agg_nd(p, tol)
        out.append(
            CheckResult(
                "elasticity",
                f"crossover alpha={alpha}",
                sign * diff > 1e-9,
                f"B_fd - B_nd = {diff:+.6e} (expected sign {sign:+.0f})",
            )
        )
    return out


def suite_corollary1(tol: float = 1e-10) -> list[CheckResult]:
    """Full entry: WD dominates both ND and FD; WD beats even ND total."""
    out = []
    for n in (2, 3):
        for m in (2, 3, 4):
            p = _params(n, m, 0.0, 1.0)
            e = cutoff_nd_wd(p)
            nd = metrics.agg_nd(p, tol, e)
            wd = metrics.agg_wd(p, tol, e)
            fd = metrics.agg_fd(p, tol)
            tot = metrics.tot_nd(p, tol, e)
            out.append(
                CheckResult(
                    "corollary1",
                    f"n={n} m={m} wd dominates",
                    wd > max(nd, fd) + 1e-9,
                    f"B_wd={wd:.9f} > max(B_nd={nd:.9f}, B_fd={fd:.9f})",
                )
            )
            out.append(
                CheckResult(
                    "corollary1",
                    f"n={n} m={m} chain",
                    wd > tot + 1e-9 and tot > nd + 1e-9,
                    f"B_wd={wd:.9f} > B_tot={tot:.9f} > B_nd={nd:.9f}",
                )
            )
    return out


def suite_maxdual(tol: float = 1e-12) -> list[CheckResult]:
    """Dual-form agreement for the expected highest ND investment."""
    out = []
    for n in (2, 3):
        for m in (1, 2, 3):
            for omega in OMEGAS:
                for alpha in POWER_ALPHAS:
                    p = _params(n, m, omega, alpha)
                    e = cutoff_nd_wd(p)
                    a = metrics.max_nd(p, tol, e)
                    b = metrics.max_nd_single_form(p, tol, e)
                    rel = abs(a - b) / max(abs(a), 1e-30)
                    out.append(
                        CheckResult(
                            "maxdual",
                            f"n={n} m={m} omega={omega} alpha={alpha}",
                            rel <= 1e-10,
                            f"rel diff {rel:.2e}",
                        )
                    )
    return out


def _bmax_diff(params: ContestParams, tol: float) -> float:
    e_nd = cutoff_nd_wd(params)
    e_fd = cutoff_fd(params, tol)
    return metrics.max_fd(params, tol, e_fd) - metrics.max_nd(params, tol, e_nd)


def suite_example4(tol: float = 1e-10) -> list[CheckResult]:
    """Highest-investment comparison for Pareto and truncated Pareto tails."""
    trunc = TruncatedParetoDistribution(1.0, 30.0)
    unbounded = ParetoDistribution(1.0)
    cases = [
        ("tpareto", trunc, 2, 24, +1.0),
        ("tpareto", trunc, 24, 2, +1.0),
        ("pareto", unbounded, 2, 24, +1.0),
        ("pareto", unbounded, 24, 2, -1.0),
    ]
    out = []
    for fam, d, n, m, sign in cases:
        p = ContestParams(n, m, 0.0, d)
        diff = _bmax_diff(p, tol)
        out.append(
            CheckResult(
                "example4",
                f"{fam} n={n} m={m}",
                sign * diff > 1e-9,
                f"Bmax_fd - Bmax_nd = {diff:+.6f} (expected sign {sign:+.0f})",
            )
        )
    # report-only: bracket the sign change along each sweep
    for fam, d in (("tpareto", trunc), ("pareto", unbounded)):
        for label, sweep in (
            ("m sweep (n=2)", [(2, m) for m in (2, 4, 8, 16, 24)]),
            ("n sweep (m=2)", [(n, 2) for n in (2, 4, 8, 16, 24)]),
        ):
            diffs = [(_bmax_diff(ContestParams(n, m, 0.0, d), tol), n, m)
                     for n, m in sweep]
            crossings = [
                f"({a_n},{a_m})->({b_n},{b_m})"
                for (a, a_n, a_m), (b, b_n, b_m) in zip(diffs, diffs[1:])
                if (a < 0) != (b < 0)
            ]
            out.append(
                CheckResult(
                    "example4",
                    f"{fam} {label} crossover",
                    None,
                    f"sign changes at {crossings or 'none'}; "
                    f"diffs={[round(x[0], 4) for x in diffs]}",
                )
            )
    return out


def suite_audit(tol: float = 1e-10) -> list[CheckResult]:
    """Best-response audit for ND and WD on the acceptance grids."""
    out = []
    for n in (2, 3):
        for m in (1, 2, 3):
            for omega in (0.0, 0.4):
                p = _params(n, m, omega, 1.0)
                for policy in (Policy.ND, Policy.WD):
                    regret = sim.best_response_audit(p, policy)
                    limit = 1e-6 * p.dist.support_hi
                    out.append(
                        CheckResult(
                            "audit",
                            f"{policy.value} n={n} m={m} omega={omega}",
                            regret <= limit,
                            f"max regret {regret:.2e} <= {limit:.1e}",
                        )
                    )
    return out


def suite_payoff_monotone(tol: float = 1e-11) -> list[CheckResult]:
    """FD entry payoff is nondecreasing on [v*_fd, v_bar]."""
    out = []
    for n in (2, 3):
        for m in (2, 3):
            p = _params(n, m, 0.4, 1.0)
            e = cutoff_fd(p)
            grid = np.linspace(e.cutoff, p.dist.support_hi, 201)
            vals = np.array([fd_entry_payoff(float(v), e.cutoff, p, tol) for v in grid])
            worst = float(np.diff(vals).min())
            out.append(
                CheckResult(
                    "payoff_monotone",
                    f"n={n} m={m} omega=0.4",
                    worst >= -1e-9,
                    f"min finite difference {worst:.3e}",
                )
            )
    return out


SIM_CASES = (
    ("uniform n2 m2 w0", ContestParams(2, 2, 0.0, PowerDistribution(1.0)), 101),
    ("uniform n2 m2 w0.4", ContestParams(2, 2, 0.4, PowerDistribution(1.0)), 102),
    ("uniform n3 m2 w0.1", ContestParams(3, 2, 0.1, PowerDistribution(1.0)), 103),
    ("power2 n2 m3 w0.4", ContestParams(2, 3, 0.4, PowerDistribution(2.0)), 104),
    ("power0.5 n3 m1 w0.1", ContestParams(3, 1, 0.1, PowerDistribution(0.5)), 105),
    ("tpareto n2 m2 w0", ContestParams(2, 2, 0.0, TruncatedParetoDistribution(1.0, 30.0)), 106),
)


def suite_simulation(
    tol: float = 1e-10, reps: int = 1_000_000, workers: int = 1
) -> list[CheckResult]:
    """Monte Carlo cross-validation of every quadrature metric (3 SE bands)."""
    out = []
    for label, p, seed in SIM_CASES:
        e_nd = cutoff_nd_wd(p)
        e_fd = cutoff_fd(p, tol)
        quad = {
            Policy.ND: (
                metrics.agg_nd(p, tol, e_nd),
                metrics.tot_nd(p, tol, e_nd),
                metrics.max_nd(p, tol, e_nd),
            ),
            Policy.WD: (
                metrics.agg_wd(p, tol, e_nd),
                metrics.agg_wd(p, tol, e_nd),
                metrics.max_wd(p, tol, e_nd),
            ),
            Policy.FD: (
                metrics.agg_fd(p, tol, e_fd),
                metrics.agg_fd(p, tol, e_fd),
                metrics.max_fd(p, tol, e_fd),
            ),
        }
        for policy, (q_agg, q_tot, q_max) in quad.items():
            entry = e_fd if policy is Policy.FD else e_nd
            start = time.perf_counter()
            rep = sim.simulate(p, policy, entry, reps, seed, workers=workers)
            elapsed = time.perf_counter() - start
            zs = [
                (rep.b_aggregate - q_agg) / max(rep.se_aggregate, 1e-300),
                (rep.b_total - q_tot) / max(rep.se_total, 1e-300),
                (rep.b_max - q_max) / max(rep.se_max, 1e-300),
            ]
            worst = max(abs(z) for z in zs)
            out.append(
                CheckResult(
                    "simulation",
                    f"{label} {policy.value}",
                    worst <= 3.0 and elapsed < 60.0,
                    f"max|z|={worst:.2f} over agg/tot/max, {elapsed:.1f}s",
                )
            )
        est, se = sim.simulate_fd_focal_payoff(
            p, e_fd, e_fd.cutoff, reps, seed + 500, workers=workers
        )
        z = (est - p.omega) / se if se > 0 else 0.0
        out.append(
            CheckResult(
                "simulation",
                f"{label} fd marginal payoff",
                abs(z) <= 3.0,
                f"payoff {est:.6f} vs omega={p.omega} (z={z:+.2f})",
            )
        )
    return out


def suite_determinism(tol: float = 1e-10) -> list[CheckResult]:
    """Identical reports for 1-worker and multi-worker runs."""
    p = ContestParams(3, 2, 0.1, PowerDistribution(1.0))
    out = []
    for policy in (Policy.ND, Policy.WD, Policy.FD):
        e = solve_entry(p, policy)
        r1 = sim.simulate(p, policy, e, 50_000, 2024, workers=1)
        r3 = sim.simulate(p, policy, e, 50_000, 2024, workers=3)
        out.append(
            CheckResult(
                "determinism",
                f"{policy.value} 1 vs 3 workers",
                r1.to_json() == r3.to_json(),
                "reports byte-identical" if r1.to_json() == r3.to_json()
                else "reports differ",
            )
        )
    return out


SUITES: dict[str, Callable[..., list[CheckResult]]] = {
    "prop1": suite_prop1,
    "prop2": suite_prop2,
    "cutoffs": suite_cutoffs,
    "elasticity": suite_elasticity,
    "corollary1": suite_corollary1,
    "maxdual": suite_maxdual,
    "example4": suite_example4,
    "audit": suite_audit,
    "payoff_monotone": suite_payoff_monotone,
    "simulation": suite_simulation,
    "determinism": suite_determinism,
}


def suite_names() -> list[str]:
    return [*SUITES, "all"]


def run_suite(name: str, **kwargs) -> list[CheckResult]:
    """Run one suite (or ``all``); kwargs are passed where a suite takes them."""
    import inspect

    if name != "all" and name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {suite_names()}")
    fns = list(SUITES.values()) if name == "all" else [SUITES[name]]
    results: list[CheckResult] = []
    for fn in fns:
        accepted = inspect.signature(fn).parameters
        results.extend(fn(**{k: v for k, v in kwargs.items() if k in accepted}))
    return results
