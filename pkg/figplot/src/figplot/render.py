"""Render figure CSVs produced by the bestshot CLI as multi-panel images.

This package consumes only the CSV files; it never recomputes model
quantities.  Line-style convention throughout: solid for the no-disclosure /
within-group-disclosure side, dashed for full disclosure.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

__all__ = ["SCHEMAS", "SchemaError", "load_rows", "render"]

SCHEMAS = {
    "fig1": ("omega", "alpha", "v_star_nd", "v_star_fd", "diff"),
    "fig2": ("alpha", "m", "B_nd", "B_fd", "diff"),
    "fig3": ("alpha", "B_wd", "B_fd", "diff"),
    "fig4": ("family", "n", "m", "Bmax_fd", "Bmax_nd", "diff"),
}

_NUMERIC = {
    "fig1": ("omega", "alpha", "v_star_nd", "v_star_fd", "diff"),
    "fig2": ("alpha", "m", "B_nd", "B_fd", "diff"),
    "fig3": ("alpha", "B_wd", "B_fd", "diff"),
    "fig4": ("n", "m", "Bmax_fd", "Bmax_nd", "diff"),
}


class SchemaError(ValueError):
    """CSV header or contents do not match the expected figure schema."""


def load_rows(figure_id: str, csv_path: str | Path) -> list[dict]:
    """Read and validate one figure CSV; returns typed row dicts."""
    if figure_id not in SCHEMAS:
        raise SchemaError(f"unknown figure id {figure_id!r}; expected {list(SCHEMAS)}")
    expected = SCHEMAS[figure_id]
    path = Path(csv_path)
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise SchemaError(f"{path}: empty file, expected header {expected}")
            if tuple(header) != expected:
                missing = [c for c in expected if c not in header]
                unexpected = [c for c in header if c not in expected]
                raise SchemaError(
                    f"{path}: header mismatch for {figure_id}; "
                    f"missing columns {missing}, unexpected columns {unexpected}, "
                    f"expected order {list(expected)}"
                )
            raw = [row for row in reader if row]
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    if not raw:
        raise SchemaError(f"{path}: no data rows")
    rows = []
    numeric = _NUMERIC[figure_id]
    for lineno, row in enumerate(raw, 2):
        if len(row) != len(expected):
            raise SchemaError(f"{path}:{lineno}: expected {len(expected)} fields")
        entry = dict(zip(expected, row))
        for col in numeric:
            try:
                entry[col] = float(entry[col])
            except ValueError:
                raise SchemaError(
                    f"{path}:{lineno}: column {col!r} is not numeric: {entry[col]!r}"
                )
        rows.append(entry)
    return rows


def _series(rows, key_col, key, x_col, y_col):
    pts = sorted(
        ((r[x_col], r[y_col]) for r in rows if r[key_col] == key),
        key=lambda p: p[0],
    )
    return [p[0] for p in pts], [p[1] for p in pts]


def _render_fig1(rows, out):
    fig, (ax_l, ax_r) = plt.subplots(1, 2, figsize=(10, 4))
    alphas = sorted({r["alpha"] for r in rows})
    for alpha in alphas:
        x, y_nd = _series(rows, "alpha", alpha, "omega", "v_star_nd")
        _, y_fd = _series(rows, "alpha", alpha, "omega", "v_star_fd")
        ax_l.plot(x, y_nd, "-", label=f"ND, alpha={alpha:g}")
        ax_l.plot(x, y_fd, "--", label=f"FD, alpha={alpha:g}")
        x, y_diff = _series(rows, "alpha", alpha, "omega", "diff")
        ax_r.plot(x, y_diff, "-", label=f"alpha={alpha:g}")
    ax_l.set_xlabel("omega")
    ax_l.set_ylabel("cutoff valuation")
    ax_r.set_xlabel("omega")
    ax_r.set_ylabel("v*_nd - v*_fd")
    for ax in (ax_l, ax_r):
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)


def _render_fig2(rows, out):
    fig, (ax_l, ax_r) = plt.subplots(1, 2, figsize=(10, 4))
    for m in sorted({r["m"] for r in rows}):
        x, y_nd = _series(rows, "m", m, "alpha", "B_nd")
        _, y_fd = _series(rows, "m", m, "alpha", "B_fd")
        ax_l.plot(x, y_nd, "-", label=f"B_nd, m={m:g}")
        ax_l.plot(x, y_fd, "--", label=f"B_fd, m={m:g}")
        x, y_diff = _series(rows, "m", m, "alpha", "diff")
        ax_r.plot(x, y_diff, "-", label=f"m={m:g}")
    ax_r.axhline(0.0, color="gray", lw=0.8)
    ax_l.set_xlabel("alpha")
    ax_l.set_ylabel("aggregate investment")
    ax_r.set_xlabel("alpha")
    ax_r.set_ylabel("B_fd - B_nd")
    for ax in (ax_l, ax_r):
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)


def _render_fig3(rows, out):
    fig, (ax_l, ax_r) = plt.subplots(1, 2, figsize=(10, 4))
    pts = sorted(rows, key=lambda r: r["alpha"])
    x = [r["alpha"] for r in pts]
    ax_l.plot(x, [r["B_wd"] for r in pts], "-", label="B_wd")
    ax_l.plot(x, [r["B_fd"] for r in pts], "--", label="B_fd")
    ax_r.plot(x, [r["diff"] for r in pts], "-")
    ax_r.axhline(0.0, color="gray", lw=0.8)
    ax_l.set_xlabel("alpha")
    ax_l.set_ylabel("aggregate investment")
    ax_l.legend(fontsize=8)
    ax_r.set_xlabel("alpha")
    ax_r.set_ylabel("B_fd - B_wd")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)


def _render_fig4(rows, out):
    fig, axes = plt.subplots(2, 2, figsize=(10, 8))
    families = ("tpareto", "pareto")
    for i, family in enumerate(families):
        fam_rows = [r for r in rows if r["family"] == family]
        if not fam_rows:
            raise SchemaError(f"fig4 data has no rows for family {family!r}")
        for j, (sweep_col, fixed_col) in enumerate((("m", "n"), ("n", "m"))):
            panel = [r for r in fam_rows if r[fixed_col] == 2]
            pts = sorted(panel, key=lambda r: r[sweep_col])
            x = [r[sweep_col] for r in pts]
            axes[i, j].plot(x, [r["diff"] for r in pts], "--")
            axes[i, j].axhline(0.0, color="gray", lw=0.8)
            axes[i, j].set_xlabel(sweep_col)
            axes[i, j].set_ylabel("Bmax_fd - Bmax_nd")
            axes[i, j].set_title(f"{family}, {fixed_col}=2")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)


_RENDERERS = {
    "fig1": _render_fig1,
    "fig2": _render_fig2,
    "fig3": _render_fig3,
    "fig4": _render_fig4,
}


def render(figure_id: str, csv_path: str | Path, out_image_path: str | Path) -> Path:
    """Validate the CSV and write the figure image; returns the output path."""
    rows = load_rows(figure_id, csv_path)
    out = Path(out_image_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    _RENDERERS[figure_id](rows, out)
    return out
