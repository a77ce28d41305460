import pytest

from bestshot import checks
from bestshot.checks import CheckResult
from bestshot.cli import main


def run_cli(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr().out
    return rc, out


def test_cutoff_command(capsys):
    rc, out = run_cli(
        capsys, "cutoff", "--policy", "fd", "--n", "2", "--m", "2", "--omega", "0.4"
    )
    assert rc == 0
    header, row = out.strip().split("\n")
    assert header.startswith("policy,n,m,omega,dist,cutoff,q,boundary")
    fields = row.split(",")
    assert fields[0] == "fd"
    assert float(fields[5]) == pytest.approx(0.703205521113, abs=1e-9)
    assert fields[7] == "interior"


def test_cutoff_byte_stable(capsys):
    args = ("cutoff", "--policy", "nd", "--n", "3", "--m", "2", "--omega", "0.25")
    _, out1 = run_cli(capsys, *args)
    _, out2 = run_cli(capsys, *args)
    assert out1 == out2


def test_compare_command(capsys):
    rc, out = run_cli(capsys, "compare", "--n", "2", "--m", "2", "--omega", "0")
    assert rc == 0
    lines = out.strip().split("\n")
    assert len(lines) == 4  # header + nd, wd, fd
    nd = lines[1].split(",")
    wd = lines[2].split(",")
    assert float(nd[7]) == pytest.approx(1 / 3, abs=1e-9)
    assert float(wd[7]) == pytest.approx(8 / 15, abs=1e-9)


def test_bids_command(capsys):
    rc, out = run_cli(
        capsys, "bids", "--policy", "wd", "--n", "2", "--m", "2",
        "--omega", "0", "--grid", "3",
    )
    assert rc == 0
    lines = out.strip().split("\n")
    assert lines[0] == "v,bid"
    assert len(lines) == 4
    v_last, b_last = lines[-1].split(",")
    assert float(v_last) == 1.0
    assert float(b_last) == pytest.approx(2 / 3, abs=1e-9)


def test_simulate_command(capsys):
    rc, out = run_cli(
        capsys, "simulate", "--policy", "nd", "--n", "2", "--m", "2",
        "--omega", "0.4", "--reps", "20000", "--seed", "5",
    )
    assert rc == 0
    header, row = out.strip().split("\n")
    assert "winner_freq_1" in header
    assert "b_aggregate" in header


def test_audit_command(capsys):
    rc, out = run_cli(
        capsys, "audit", "--policy", "nd", "--n", "2", "--m", "2",
        "--omega", "0.4", "--grid", "21x201",
    )
    assert rc == 0
    assert out.strip().split("\n")[1].endswith("pass")


def test_figures_fig3(tmp_path, capsys):
    rc, out = run_cli(capsys, "figures", "--figure", "fig3", "--out", str(tmp_path))
    assert rc == 0
    csv_path = tmp_path / "fig3.csv"
    text = csv_path.read_text()
    lines = text.strip().split("\n")
    assert lines[0] == "alpha,B_wd,B_fd,diff"
    assert len(lines) == 22
    assert "\r" not in text


def test_check_command_pass_and_fail(capsys, monkeypatch):
    rc, out = run_cli(capsys, "check", "--suite", "prop1")
    assert rc == 0
    assert "PASS" in out and "FAIL" not in out

    def bad_suite():
        return [CheckResult("canary", "forced", False, "forced failure")]

    monkeypatch.setitem(checks.SUITES, "canary", bad_suite)
    rc, out = run_cli(capsys, "check", "--suite", "canary")
    assert rc == 1
    assert "FAIL" in out


def test_validation_reports_offending_flag(capsys):
    for argv, needle in [
        (("cutoff", "--n", "1"), "--n"),
        (("cutoff", "--m", "0"), "--m"),
        (("cutoff", "--omega", "-0.5"), "--omega"),
        (("cutoff", "--omega", "2.0"), "--omega"),
        (("cutoff", "--dist", "gauss:mu=0"), "--dist"),
        (("cutoff", "--tol", "-1"), "--tol"),
        (("audit", "--grid", "abc"), "--grid"),
        (("simulate", "--reps", "1"), "--reps"),
    ]:
        with pytest.raises(SystemExit) as exc:
            main(list(argv))
        assert exc.value.code == 2
        err = capsys.readouterr().err
        assert needle in err


def test_config_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n = 3\nomega = 0.25\ndist = power:alpha=2\n")
    _, out = run_cli(capsys, "cutoff", "--policy", "nd", "--config", str(cfg))
    row = out.strip().split("\n")[1].split(",")
    assert row[1] == "3" and row[3] == "0.25" and row[4] == "power:alpha=2"
    # explicit flag beats the config value
    _, out = run_cli(
        capsys, "cutoff", "--policy", "nd", "--config", str(cfg), "--n", "2"
    )
    assert out.strip().split("\n")[1].split(",")[1] == "2"


def test_config_rejects_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("mystery = 1\n")
    with pytest.raises(SystemExit):
        main(["cutoff", "--config", str(cfg)])


def test_out_file(tmp_path, capsys):
    out_path = tmp_path / "row.csv"
    rc, _ = run_cli(
        capsys, "cutoff", "--policy", "nd", "--omega", "0.4", "--out", str(out_path)
    )
    assert rc == 0
    assert out_path.read_text().startswith("policy,")
