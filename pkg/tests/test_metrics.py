from fractions import Fraction

import numpy as np
import pytest

from bestshot import metrics
from bestshot.dist import (
    ParetoDistribution,
    PowerDistribution,
    TruncatedParetoDistribution,
)
from bestshot.entry import ContestParams, Policy, cutoff_fd, cutoff_nd_wd

UNIFORM = PowerDistribution(1.0)

# independent oracles, frozen from mpmath tanh-sinh quadrature (25 digits)
# at the frozen cutoffs v*_nd = 0.705245039807982168, v*_fd = 0.703205521112702991
ORACLE_U22_W04 = {
    "agg_nd": 0.167981371459984805,
    "agg_wd": 0.20521189298428162,
    "tot_nd": 0.184383825084635167,
    "max_nd": 0.141610164366658364,
    "max_wd": 0.171899002971924914,
    "agg_fd": 0.196660266204394723,
    "max_fd": 0.134637179124979372,
}
# power(alpha=2), n=3, m=2, omega=0.1
ORACLE_P2_N3 = {"agg_nd": 0.58084210465274589, "agg_wd": 0.815692195037148858}
# full-entry Pareto family values for the highest-investment objective
ORACLE_MAXND = {
    ("pareto", 24, 2): 32.1256014012675108,
    ("pareto", 2, 24): 16.7611833397917448,
    ("pareto", 2, 2): 1.51904761904761905,
    ("tpareto", 24, 2): 8.28008975927853123,
    ("tpareto", 2, 24): 4.32004683092792934,
    ("tpareto", 2, 2): 1.0844650343224509,
}


def frac(a, b):
    return float(Fraction(a, b))


def test_golden_full_entry_uniform():
    p22 = ContestParams(2, 2, 0.0, UNIFORM)
    pi = ContestParams(2, 1, 0.0, UNIFORM)
    assert metrics.agg_individual_nd(pi) == pytest.approx(frac(1, 3), abs=1e-9)
    assert metrics.agg_individual_fd(pi) == pytest.approx(frac(5, 18), abs=1e-9)
    assert metrics.agg_nd(p22) == pytest.approx(frac(1, 3), abs=1e-9)
    assert metrics.agg_wd(p22) == pytest.approx(frac(8, 15), abs=1e-9)
    assert metrics.agg_fd(p22) == pytest.approx(frac(7, 15), abs=1e-9)
    assert metrics.tot_nd(p22) == pytest.approx(frac(2, 5), abs=1e-9)
    assert metrics.max_nd(p22) == pytest.approx(frac(1, 4), abs=1e-9)
    assert metrics.max_fd(p22) == pytest.approx(frac(1, 3), abs=1e-9)
    assert metrics.max_wd(p22) == pytest.approx(frac(8, 21), abs=1e-9)


def test_golden_more_players():
    # E of the 2nd highest of three uniforms = 1/2; agg_nd is m-independent
    assert metrics.agg_individual_nd(
        ContestParams(3, 1, 0.0, UNIFORM)
    ) == pytest.approx(frac(1, 2), abs=1e-9)
    assert metrics.agg_nd(ContestParams(3, 2, 0.0, UNIFORM)) == pytest.approx(
        frac(1, 2), abs=1e-9
    )
    assert metrics.agg_nd(ContestParams(2, 3, 0.0, UNIFORM)) == pytest.approx(
        frac(1, 3), abs=1e-9
    )
    # m=1 group max equals b(v) integrated against dF^n: 1/4 for two uniforms
    assert metrics.max_nd(ContestParams(2, 1, 0.0, UNIFORM)) == pytest.approx(
        frac(1, 4), abs=1e-9
    )


def test_interior_cutoff_oracles_uniform():
    p = ContestParams(2, 2, 0.4, UNIFORM)
    e_nd = cutoff_nd_wd(p)
    e_fd = cutoff_fd(p)
    got = {
        "agg_nd": metrics.agg_nd(p, entry=e_nd),
        "agg_wd": metrics.agg_wd(p, entry=e_nd),
        "tot_nd": metrics.tot_nd(p, entry=e_nd),
        "max_nd": metrics.max_nd(p, entry=e_nd),
        "max_wd": metrics.max_wd(p, entry=e_nd),
        "agg_fd": metrics.agg_fd(p, entry=e_fd),
        "max_fd": metrics.max_fd(p, entry=e_fd),
    }
    for key, expected in ORACLE_U22_W04.items():
        assert got[key] == pytest.approx(expected, abs=2e-10), key


def test_interior_cutoff_oracles_power2():
    p = ContestParams(3, 2, 0.1, PowerDistribution(2.0))
    e = cutoff_nd_wd(p)
    assert e.cutoff**2 == pytest.approx(0.4981259099939707**2, abs=1e-11)
    assert metrics.agg_nd(p, entry=e) == pytest.approx(
        ORACLE_P2_N3["agg_nd"], abs=2e-10
    )
    assert metrics.agg_wd(p, entry=e) == pytest.approx(
        ORACLE_P2_N3["agg_wd"], abs=2e-10
    )


@pytest.mark.parametrize("fam,n,m", list(ORACLE_MAXND))
def test_max_nd_pareto_oracles(fam, n, m):
    dist = (
        ParetoDistribution(1.0)
        if fam == "pareto"
        else TruncatedParetoDistribution(1.0, 30.0)
    )
    p = ContestParams(n, m, 0.0, dist)
    assert metrics.max_nd(p) == pytest.approx(ORACLE_MAXND[(fam, n, m)], rel=1e-9)


@pytest.mark.parametrize("omega", [0.0, 0.3])
@pytest.mark.parametrize("n", [2, 3])
def test_m1_reductions(n, omega):
    pg = ContestParams(n, 1, omega, PowerDistribution(2.0))
    e = cutoff_nd_wd(pg)
    ind_nd = metrics.agg_individual_nd(pg)
    ind_fd = metrics.agg_individual_fd(pg, entry=cutoff_fd(pg))
    assert metrics.agg_nd(pg, entry=e) == pytest.approx(ind_nd, abs=1e-10)
    assert metrics.agg_wd(pg, entry=e) == pytest.approx(ind_nd, abs=1e-10)
    assert metrics.tot_nd(pg, entry=e) == pytest.approx(ind_nd, abs=1e-10)
    assert metrics.agg_fd(pg) == pytest.approx(ind_fd, abs=1e-10)
    assert metrics.max_wd(pg, entry=e) == pytest.approx(
        metrics.max_nd(pg, entry=e), abs=1e-10
    )


def test_max_nd_dual_form_agreement():
    for n, m, omega, alpha in [(2, 2, 0.4, 1.0), (3, 3, 0.1, 0.5), (2, 1, 0.0, 2.0)]:
        p = ContestParams(n, m, omega, PowerDistribution(alpha))
        e = cutoff_nd_wd(p)
        a = metrics.max_nd(p, tol=1e-12, entry=e)
        b = metrics.max_nd_single_form(p, tol=1e-12, entry=e)
        assert abs(a - b) / abs(a) <= 1e-10


def test_metrics_nonnegative_and_decreasing_in_omega():
    omegas = np.linspace(0.0, 0.8, 5)
    fns = [metrics.agg_nd, metrics.agg_wd, metrics.tot_nd, metrics.max_nd,
           metrics.max_wd]
    for fn in fns:
        vals = [fn(ContestParams(2, 2, float(w), UNIFORM)) for w in omegas]
        assert all(v >= 0.0 for v in vals)
        assert all(b <= a + 1e-10 for a, b in zip(vals, vals[1:])), fn.__name__
    # FD metrics: only nonnegativity is asserted (entry and bidding effects compete)
    for fn in (metrics.agg_fd, metrics.max_fd):
        assert all(
            fn(ContestParams(2, 2, float(w), UNIFORM)) >= 0.0 for w in omegas
        )


def test_no_entry_limit_vanishes():
    p = ContestParams(2, 2, 0.999999, UNIFORM)
    e = cutoff_nd_wd(p)
    assert metrics.agg_nd(p, entry=e) <= 1e-4
    assert metrics.max_nd(p, entry=e) <= 1e-4


def test_proposition_orderings_spot():
    p = ContestParams(2, 2, 0.0, UNIFORM)
    e = cutoff_nd_wd(p)
    wd = metrics.agg_wd(p, entry=e)
    tot = metrics.tot_nd(p, entry=e)
    nd = metrics.agg_nd(p, entry=e)
    assert wd > tot > nd


def test_compare_policies_rows():
    p = ContestParams(2, 2, 0.4, UNIFORM)
    nd, wd, fd = metrics.compare_policies(p)
    assert (nd.policy, wd.policy, fd.policy) == (Policy.ND, Policy.WD, Policy.FD)
    assert wd.b_total == wd.b_aggregate
    assert fd.b_total == fd.b_aggregate
    assert nd.b_total > nd.b_aggregate
    for pm in (nd, wd, fd):
        assert pm.b_max <= pm.b_aggregate <= pm.b_total
    assert wd.entry.cutoff == nd.entry.cutoff
    assert fd.entry.cutoff < nd.entry.cutoff


def test_tolerance_self_consistency():
    p = ContestParams(2, 3, 0.2, PowerDistribution(0.5))
    for fn in (metrics.agg_nd, metrics.agg_fd, metrics.max_wd):
        coarse = fn(p, tol=1e-8)
        fine = fn(p, tol=5e-9)
        assert abs(coarse - fine) <= 1e-8 * max(1.0, abs(fine))
