"""Acceptance suite: one test per acceptance criterion, stated tolerances.

Each test prints a single pass/fail line (visible with ``pytest -s`` or in
failure reports).  Golden values come from independent symbolic oracles
computed before the build; grid properties delegate to the check suites in
:mod:`bestshot.checks`, whose grids match the criteria.
"""

from fractions import Fraction

import pytest

from bestshot import checks, metrics
from bestshot.dist import PowerDistribution
from bestshot.entry import ContestParams

UNIFORM = PowerDistribution(1.0)


def _report(criterion: str, results) -> None:
    failures = [r for r in results if r.hard_failure]
    status = "FAIL" if failures else "PASS"
    print(f"ACCEPTANCE {criterion}: {status} "
          f"({sum(1 for r in results if r.passed is not None)} checks)")
    assert not failures, [f"{r.name}: {r.detail}" for r in failures]


def test_criterion_01_golden_closed_forms():
    p22 = ContestParams(2, 2, 0.0, UNIFORM)
    pi = ContestParams(2, 1, 0.0, UNIFORM)
    golden = [
        ("agg_individual_nd", metrics.agg_individual_nd(pi), Fraction(1, 3)),
        ("agg_individual_fd", metrics.agg_individual_fd(pi), Fraction(5, 18)),
        ("agg_nd", metrics.agg_nd(p22), Fraction(1, 3)),
        ("agg_wd", metrics.agg_wd(p22), Fraction(8, 15)),
        ("agg_fd", metrics.agg_fd(p22), Fraction(7, 15)),
        ("tot_nd", metrics.tot_nd(p22), Fraction(2, 5)),
        ("max_nd", metrics.max_nd(p22), Fraction(1, 4)),
        ("max_fd", metrics.max_fd(p22), Fraction(1, 3)),
    ]
    errs = {name: abs(got - float(want)) for name, got, want in golden}
    worst = max(errs.values())
    ok = worst <= 1e-9
    print(f"ACCEPTANCE 1 (golden closed forms): {'PASS' if ok else 'FAIL'} "
          f"(worst abs err {worst:.2e})")
    assert ok, errs


def test_criterion_02_proposition1():
    _report("2 (Proposition 1: individual FD < ND)", checks.run_suite("prop1"))


def test_criterion_03_proposition2():
    _report("3 (Proposition 2: WD > ND, m=1 equality)", checks.run_suite("prop2"))


def test_criterion_04_cutoff_ordering():
    _report("4 (FD cutoff ordering and endpoint limits)",
            checks.run_suite("cutoffs"))


def test_criterion_05_elasticity():
    _report("5 (elasticity proposition and Example 2 crossover)",
            checks.run_suite("elasticity"))


def test_criterion_06_corollary1_and_chain():
    _report("6 (Corollary 1 and WD > tot_ND > ND chain)",
            checks.run_suite("corollary1"))


def test_criterion_07_example4_signs():
    _report("7 (Example 4 / Proposition 5 sign pattern)",
            checks.run_suite("example4"))


def test_criterion_08_max_nd_dual_form():
    _report("8 (max_nd dual-form agreement 1e-10)", checks.run_suite("maxdual"))


def test_criterion_09_best_response_audit():
    _report("9 (best-response audit, regret <= 1e-6 v_bar)",
            checks.run_suite("audit"))


@pytest.mark.slow
def test_criterion_10_simulation_cross_validation():
    _report("10 (10^6-rep simulation within 3 SE, < 60 s/pair)",
            checks.run_suite("simulation", reps=1_000_000))


def test_criterion_11_fd_payoff_monotone():
    _report("11 (FD entry payoff nondecreasing, 201-point grids)",
            checks.run_suite("payoff_monotone"))


def test_criterion_12_determinism():
    _report("12 (worker-count determinism, identical bytes)",
            checks.run_suite("determinism"))
