"""Deterministic quadrature and bracketed root finding.

All equilibrium objects reduce to integrals over triangular probability-space
domains {1 >= u1 >= u2 >= u_lo} and to monotone scalar root problems.  The
quadrature is a fixed-order Gauss-Legendre rule (order 32) per panel with
globally adaptive bisection; the root finder is a safeguarded secant /
bisection hybrid.  Both are bit-deterministic for identical inputs.
"""

from __future__ import annotations

import heapq
import math
from typing import Callable

import numpy as np

__all__ = [
    "DEFAULT_TOL",
    "DEFAULT_ROOT_TOL",
    "IntegrationError",
    "BracketError",
    "integrate_1d",
    "integrate_triangle",
    "find_root_monotone",
]

DEFAULT_TOL = 1e-10
DEFAULT_ROOT_TOL = 1e-12

GAUSS_ORDER = 32
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(GAUSS_ORDER)

_MAX_PANELS = 40_000


class IntegrationError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class BracketError(ValueError):
    """Root bracket violated: h(lo) > 0 or h(hi) < 0."""


def _gauss_panel(g: Callable, lo: float, hi: float) -> float:
    half = 0.5 * (hi - lo)
    x = 0.5 * (hi + lo) + half * _NODES
    return half * float(np.sum(_WEIGHTS * g(x)))


def integrate_1d(
    g: Callable,
    lo: float,
    hi: float,
    tol: float = DEFAULT_TOL,
    max_panels: int = _MAX_PANELS,
) -> float:
    """Integrate g over [lo, hi] to relative tolerance ``tol``.

    ``g`` must accept an ndarray of abscissae and return the integrand values
    (scalars broadcast).  Panels with the largest error estimate are bisected
    first until the summed estimate drops below ``tol * |integral|``.
    """
    if not lo <= hi:
        raise ValueError(f"need lo <= hi, got [{lo}, {hi}]")
    if lo == hi:
        return 0.0

    def make_panel(a: float, b: float, coarse: float):
        # error estimate: one-panel rule vs its two halves (halves kept for reuse)
        mid = 0.5 * (a + b)
        left = _gauss_panel(g, a, mid)
        right = _gauss_panel(g, mid, b)
        fine = left + right
        if not math.isfinite(fine):
            raise IntegrationError(f"non-finite integrand on [{a}, {b}]")
        return (-abs(fine - coarse), a, mid, b, fine, left, right)

    heap = [make_panel(lo, hi, _gauss_panel(g, lo, hi))]
    total = heap[0][4]
    total_err = -heap[0][0]
    stuck_err = 0.0

    while total_err > tol * max(abs(total), 1e-300):
        if len(heap) >= max_panels:
            raise IntegrationError(
                f"no convergence after {max_panels} panels "
                f"(err={total_err:.3e}, target={tol * abs(total):.3e})"
            )
        neg_err, a, mid, b, val, left, right = heapq.heappop(heap)
        total -= val
        total_err -= -neg_err
        if mid <= a or mid >= b:
            # panel width at floating-point resolution; cannot refine further
            total += val
            stuck_err += -neg_err
            if stuck_err > tol * max(abs(total), 1e-300):
                raise IntegrationError("tolerance unreachable at float resolution")
            continue
        for child in (make_panel(a, mid, left), make_panel(mid, b, right)):
            heapq.heappush(heap, child)
            total += child[4]
            total_err += -child[0]
    return total


def integrate_triangle(
    g: Callable,
    u_lo: float,
    tol: float = DEFAULT_TOL,
    outer_lo: float | None = None,
    outer_hi: float = 1.0,
) -> float:
    """Integrate g(u1, u2) over {outer_hi >= u1 >= u2 >= u_lo}.

    Iterated quadrature: adaptive outer integral over u1, adaptive inner
    integral over [u_lo, u1] at one tenth of the outer tolerance.  With
    ``outer_lo`` set, the outer variable starts there instead of at ``u_lo``
    (a trapezoidal domain, used by the full-disclosure payoff terms).
    """
    if not 0.0 <= u_lo <= 1.0:
        raise ValueError(f"u_lo must lie in [0, 1], got {u_lo}")
    start = u_lo if outer_lo is None else outer_lo
    if start < u_lo:
        raise ValueError("outer_lo must be >= u_lo")
    inner_tol = tol / 10.0

    def outer_integrand(u1_arr: np.ndarray) -> np.ndarray:
        out = np.empty_like(u1_arr)
        for i, u1 in enumerate(u1_arr):
            if u1 <= u_lo:
                out[i] = 0.0
            else:
                out[i] = integrate_1d(
                    lambda u2: g(u1, u2), u_lo, float(u1), inner_tol
                )
        return out

    return integrate_1d(outer_integrand, start, outer_hi, tol)


def integrate_triangle_u2_outer(
    g: Callable,
    u_lo: float,
    tol: float = DEFAULT_TOL,
) -> float:
    """Integrate g(u1, u2) over {1 >= u1 >= u2 >= u_lo}, iterating u2 outermost.

    Same domain and argument order as :func:`integrate_triangle`; preferable
    when g's u1-sections are smooth while its u2-sections are not (heavy-tail
    quantiles make t2-sections singular near the top of the support, but the
    t1-section of t2 * F-powers stays bounded there).
    """
    if not 0.0 <= u_lo <= 1.0:
        raise ValueError(f"u_lo must lie in [0, 1], got {u_lo}")
    inner_tol = tol / 10.0

    def outer_integrand(u2_arr: np.ndarray) -> np.ndarray:
        out = np.empty_like(u2_arr)
        for i, u2 in enumerate(u2_arr):
            out[i] = integrate_1d(
                lambda u1: g(u1, float(u2)), float(u2), 1.0, inner_tol
            )
        return out

    return integrate_1d(outer_integrand, u_lo, 1.0, tol)


def find_root_monotone(
    h: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = DEFAULT_ROOT_TOL,
) -> float:
    """Root of a nondecreasing continuous h with h(lo) <= 0 <= h(hi).

    Safeguarded secant / bisection hybrid; the bracket is narrowed until its
    width is <= ``tol`` and the midpoint is returned.  Raises
    :class:`BracketError` when the sign condition fails at either end, which
    callers map to full-entry or no-entry boundaries.
    """
    if not lo <= hi:
        raise ValueError(f"need lo <= hi, got [{lo}, {hi}]")
    flo = float(h(lo))
    fhi = float(h(hi))
    if math.isnan(flo) or math.isnan(fhi):
        raise ValueError("h evaluated to NaN at a bracket endpoint")
    if flo > 0.0:
        raise BracketError(f"h(lo) = {flo} > 0: no root at or above {lo}")
    if fhi < 0.0:
        raise BracketError(f"h(hi) = {fhi} < 0: no root at or below {hi}")
    if flo == 0.0:
        return lo
    if fhi == 0.0 and hi - lo <= tol:
        return hi

    use_secant = True
    for _ in range(300):
        width = hi - lo
        if width <= tol:
            break
        x = None
        if use_secant and fhi != flo:
            x = lo - flo * width / (fhi - flo)
            # keep strictly interior; fall back to bisection otherwise
            margin = 1e-3 * width
            if not (lo + margin <= x <= hi - margin):
                x = None
        if x is None:
            x = lo + 0.5 * width
        use_secant = not use_secant
        fx = float(h(x))
        if math.isnan(fx):
            raise ValueError(f"h({x}) is NaN")
        if fx <= 0.0:
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
    return 0.5 * (lo + hi)
