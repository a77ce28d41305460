import pytest

from bestshot import checks
from bestshot.checks import CheckResult


def test_suite_names_cover_registry():
    names = checks.suite_names()
    assert "prop1" in names and "all" in names
    assert set(checks.SUITES) <= set(names)


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        checks.run_suite("nope")


def test_prop1_suite_passes():
    results = checks.run_suite("prop1")
    assert results and all(r.passed for r in results)


def test_corollary1_suite_passes():
    results = checks.run_suite("corollary1")
    assert results and all(r.passed for r in results)


def test_determinism_suite_passes():
    results = checks.run_suite("determinism")
    assert results and all(r.passed for r in results)


def test_report_only_rows_never_fail():
    results = checks.run_suite("example4")
    info = [r for r in results if r.passed is None]
    assert info, "example4 must report crossover brackets"
    assert not any(r.hard_failure for r in info)


def test_canary_inverted_inequality_fails(monkeypatch):
    # a deliberately inverted claim must be reported as a hard failure
    def bad_suite(tol: float = 1e-10):
        from bestshot import metrics
        from bestshot.dist import PowerDistribution
        from bestshot.entry import ContestParams

        p = ContestParams(2, 2, 0.0, PowerDistribution(1.0))
        nd = metrics.agg_nd(p, tol)
        wd = metrics.agg_wd(p, tol)
        return [CheckResult("canary", "inverted prop2", nd > wd, f"{nd} > {wd}")]

    monkeypatch.setitem(checks.SUITES, "canary", bad_suite)
    results = checks.run_suite("canary")
    assert len(results) == 1
    assert results[0].hard_failure


def test_simulation_suite_small():
    # reduced replication count: the wiring, not the 3-SE power, is under test
    results = checks.run_suite("simulation", reps=60_000)
    assert results and all(r.passed for r in results)
