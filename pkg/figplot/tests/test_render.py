from pathlib import Path

import pytest

from figplot.cli import main
from figplot.render import SCHEMAS, SchemaError, load_rows, render

DATA = Path(__file__).parent / "data"


@pytest.mark.parametrize("figure_id", sorted(SCHEMAS))
def test_renders_every_figure_csv(figure_id, tmp_path):
    out = render(figure_id, DATA / f"{figure_id}.csv", tmp_path / f"{figure_id}.png")
    assert out.exists() and out.stat().st_size > 1000


def test_load_rows_types():
    rows = load_rows("fig4", DATA / "fig4.csv")
    assert {r["family"] for r in rows} == {"tpareto", "pareto"}
    assert all(isinstance(r["diff"], float) for r in rows)


def test_empty_csv_is_schema_error(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(SchemaError, match="empty file"):
        render("fig1", empty, tmp_path / "x.png")


def test_header_only_is_schema_error(tmp_path):
    p = tmp_path / "h.csv"
    p.write_text("omega,alpha,v_star_nd,v_star_fd,diff\n")
    with pytest.raises(SchemaError, match="no data rows"):
        render("fig1", p, tmp_path / "x.png")


def test_wrong_schema_reports_column_diff(tmp_path):
    with pytest.raises(SchemaError) as exc:
        render("fig2", DATA / "fig1.csv", tmp_path / "x.png")
    msg = str(exc.value)
    assert "missing columns" in msg and "unexpected columns" in msg
    assert "B_nd" in msg and "omega" in msg


def test_extra_column_rejected(tmp_path):
    p = tmp_path / "extra.csv"
    p.write_text("alpha,B_wd,B_fd,diff,bonus\n1.0,0.5,0.4,-0.1,9\n")
    with pytest.raises(SchemaError, match="unexpected columns \\['bonus'\\]"):
        render("fig3", p, tmp_path / "x.png")


def test_non_numeric_cell_rejected(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("alpha,B_wd,B_fd,diff\noops,0.5,0.4,-0.1\n")
    with pytest.raises(SchemaError, match="not numeric"):
        render("fig3", p, tmp_path / "x.png")


def test_unknown_figure_id(tmp_path):
    with pytest.raises(SchemaError, match="unknown figure id"):
        load_rows("fig9", DATA / "fig1.csv")


def test_missing_file_is_loud(tmp_path):
    with pytest.raises(SchemaError, match="cannot read"):
        render("fig1", tmp_path / "nope.csv", tmp_path / "x.png")


def test_cli_render_and_error(tmp_path, capsys):
    out = tmp_path / "fig3.png"
    rc = main(["render", "--figure", "fig3", "--csv", str(DATA / "fig3.csv"),
               "--out", str(out)])
    assert rc == 0 and out.exists()
    rc = main(["render", "--figure", "fig1", "--csv", str(DATA / "fig3.csv"),
               "--out", str(tmp_path / "y.png")])
    assert rc == 1
    assert "header mismatch" in capsys.readouterr().err
