"""Figure-ready CSV data for the four numerical illustrations.

fig1: entry cutoffs vs outside option (ND vs FD, two power exponents).
fig2: aggregate investment vs low elasticity (ND vs FD, m = 2 and 3).
fig3: aggregate investment vs elasticity in [1, 2] (WD vs FD).
fig4: highest-investment difference (FD - ND) vs group size and group count
      for a truncated and an unbounded Pareto tail.

Grid points are independent; they can be evaluated across processes, with
rows always written in deterministic grid order.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from bestshot import metrics
from bestshot.dist import (
    ParetoDistribution,
    PowerDistribution,
    TruncatedParetoDistribution,
)
from bestshot.entry import ContestParams, cutoff_fd, cutoff_nd_wd
from bestshot.numerics import DEFAULT_TOL

__all__ = ["FIGURE_IDS", "FIGURE_COLUMNS", "generate_figure", "format_value"]

FIGURE_IDS = ("fig1", "fig2", "fig3", "fig4")

FIGURE_COLUMNS = {
    "fig1": ("omega", "alpha", "v_star_nd", "v_star_fd", "diff"),
    "fig2": ("alpha", "m", "B_nd", "B_fd", "diff"),
    "fig3": ("alpha", "B_wd", "B_fd", "diff"),
    "fig4": ("family", "n", "m", "Bmax_fd", "Bmax_nd", "diff"),
}


def format_value(x) -> str:
    """CSV cell format: 12 significant digits for floats, plain otherwise."""
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def write_csv(path: Path, header, rows) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(format_value(x) for x in row) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write figure CSV {path}: {exc}") from exc


def _fig1_point(task):
    omega, alpha, tol = task
    p = ContestParams(2, 3, omega, PowerDistribution(alpha))
    v_nd = cutoff_nd_wd(p).cutoff
    v_fd = cutoff_fd(p, tol).cutoff
    return (omega, alpha, v_nd, v_fd, v_nd - v_fd)


def _fig2_point(task):
    alpha, m, tol = task
    p = ContestParams(2, m, 0.4, PowerDistribution(alpha))
    b_nd = metrics.agg_nd(p, tol)
    b_fd = metrics.agg_fd(p, tol)
    return (alpha, m, b_nd, b_fd, b_fd - b_nd)


def _fig3_point(task):
    alpha, tol = task
    p = ContestParams(2, 3, 0.4, PowerDistribution(alpha))
    b_wd = metrics.agg_wd(p, tol)
    b_fd = metrics.agg_fd(p, tol)
    return (alpha, b_wd, b_fd, b_fd - b_wd)


def _fig4_point(task):
    family, n, m, tol = task
    dist = (
        TruncatedParetoDistribution(1.0, 30.0)
        if family == "tpareto"
        else ParetoDistribution(1.0)
    )
    p = ContestParams(n, m, 0.0, dist)
    b_fd = metrics.max_fd(p, tol, cutoff_fd(p, tol))
    b_nd = metrics.max_nd(p, tol, cutoff_nd_wd(p))
    return (family, n, m, b_fd, b_nd, b_fd - b_nd)


_POINT_FN = {
    "fig1": _fig1_point,
    "fig2": _fig2_point,
    "fig3": _fig3_point,
    "fig4": _fig4_point,
}


def _tasks(figure_id: str, tol: float) -> list[tuple]:
    if figure_id == "fig1":
        omegas = np.linspace(0.001, 0.999, 101)
        return [(float(w), a, tol) for a in (1.0, 3.0) for w in omegas]
    if figure_id == "fig2":
        alphas = np.linspace(0.05, 0.3, 26)
        return [(float(a), m, tol) for m in (2, 3) for a in alphas]
    if figure_id == "fig3":
        return [(float(a), tol) for a in np.linspace(1.0, 2.0, 21)]
    if figure_id == "fig4":
        tasks = [("tpareto", 2, m, tol) for m in range(2, 25)]
        tasks += [("tpareto", n, 2, tol) for n in range(2, 25)]
        tasks += [("pareto", 2, m, tol) for m in range(2, 25)]
        tasks += [("pareto", n, 2, tol) for n in range(2, 25)]
        return tasks
    raise ValueError(f"unknown figure id {figure_id!r}; choose from {FIGURE_IDS}")


def generate_figure(
    figure_id: str,
    out_dir: str | Path,
    tol: float = DEFAULT_TOL,
    workers: int = 1,
) -> Path:
    """Compute one figure's data and write ``<out_dir>/<figure_id>.csv``."""
    tasks = _tasks(figure_id, tol)
    fn = _POINT_FN[figure_id]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(fn, tasks, chunksize=4))
    else:
        rows = [fn(t) for t in tasks]
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{figure_id}.csv"
    write_csv(path, FIGURE_COLUMNS[figure_id], rows)
    return path
