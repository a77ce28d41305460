"""Equilibrium entry cutoffs and marginal-type payoff machinery.

Players observe their valuation, then enter iff it clears a policy-specific
cutoff v*.  The cutoff solves the marginal type's indifference condition
v * p(v) = omega, where p is the marginal type's winning probability under
the given disclosure policy.  No disclosure and within-group disclosure share
one cutoff; full disclosure adds a nonnegative bonus term to the marginal
payoff and therefore induces (weakly) more entry.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from bestshot.dist import ValueDistribution, quantile_ratio
from bestshot.numerics import (
    DEFAULT_ROOT_TOL,
    DEFAULT_TOL,
    find_root_monotone,
    integrate_1d,
    integrate_triangle,
    integrate_triangle_u2_outer,
)

__all__ = [
    "Policy",
    "Boundary",
    "ContestParams",
    "EntryOutcome",
    "EquilibriumError",
    "p_nd_marginal",
    "p_nd_marginal_sum",
    "cutoff_individual",
    "cutoff_nd_wd",
    "cutoff_fd",
    "fd_entry_bonus",
    "fd_sufficient_condition_holds",
    "fd_entry_payoff",
    "solve_entry",
]


class Policy(str, enum.Enum):
    ND = "nd"
    WD = "wd"
    FD = "fd"
    IND = "ind"


class Boundary(str, enum.Enum):
    INTERIOR = "interior"
    FULL_ENTRY = "full_entry"
    NO_ENTRY_LIMIT = "no_entry_limit"


class EquilibriumError(RuntimeError):
    """A numerically verified equilibrium precondition failed."""


@dataclass(frozen=True)
class ContestParams:
    """Primitive contest data: n groups of m potential players each.

    ``omega`` is the outside option forgone by entrants; it must lie below
    the top of the valuation support so that some entry always occurs.
    """

    n: int
    m: int
    omega: float
    dist: ValueDistribution

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 2):
            raise ValueError(f"need integer n >= 2, got {self.n}")
        if not (isinstance(self.m, int) and self.m >= 1):
            raise ValueError(f"need integer m >= 1, got {self.m}")
        if not 0.0 <= self.omega < self.dist.support_hi:
            raise ValueError(
                f"need 0 <= omega < v_bar, got omega={self.omega}, "
                f"v_bar={self.dist.support_hi}"
            )

    @property
    def nm(self) -> int:
        return self.n * self.m


@dataclass(frozen=True)
class EntryOutcome:
    """Entry cutoff v*, entry probability q = 1 - F(v*) and boundary class."""

    cutoff: float
    q: float
    policy: Policy
    boundary: Boundary

    @property
    def full_entry(self) -> bool:
        return self.boundary is Boundary.FULL_ENTRY


def p_nd_marginal(v, params: ContestParams):
    """Marginal type's winning probability under ND for a cutoff at v.

    Closed form (m-1)/(nm-1) + m(n-1)/(nm-1) * F(v)**(nm-1); equals the raw
    binomial double sum :func:`p_nd_marginal_sum`.  Nondecreasing in v.
    """
    n, m, nm = params.n, params.m, params.nm
    fv = np.asarray(params.dist.cdf(v), dtype=float)
    return (m - 1) / (nm - 1) + (m * (n - 1)) / (nm - 1) * fv ** (nm - 1)


def p_nd_marginal_sum(v: float, params: ContestParams) -> float:
    """Unsimplified marginal winning probability under ND (reference form).

    Direct evaluation of the free-riding double sum over the number of
    entrants in the marginal player's own group (k1) and in the other groups
    (k2); kept as an independent check of the closed form.
    """
    n, m, nm = params.n, params.m, params.nm
    q = 1.0 - float(params.dist.cdf(v))
    total = (1.0 - q) ** (nm - m)
    for k1 in range(0, m):
        for k2 in range(1, nm - m + 1):
            weight = (
                math.comb(m - 1, k1)
                * math.comb(nm - m, k2)
                * q ** (k1 + k2)
                * (1.0 - q) ** (nm - 1 - k1 - k2)
            )
            total += weight * k1 / (k1 + k2)
    return total


def _interior_root(params: ContestParams, phi, root_tol: float) -> float:
    """Solve phi(v) = omega for the increasing marginal-payoff curve phi."""
    d = params.dist
    lo = d.support_lo
    if d.has_bounded_support:
        return find_root_monotone(
            lambda v: phi(v) - params.omega, lo, d.support_hi, root_tol
        )
    # unbounded support: bracket in probability space, map back through Q
    u_root = find_root_monotone(
        lambda u: phi(float(d.quantile(u))) - params.omega,
        0.0,
        1.0 - 1e-15,
        min(root_tol, 1e-14),
    )
    return float(d.quantile(u_root))


def _outcome(params: ContestParams, cutoff: float, policy: Policy) -> EntryOutcome:
    d = params.dist
    q = 1.0 - float(d.cdf(cutoff))
    if cutoff <= d.support_lo:
        boundary = Boundary.FULL_ENTRY
    elif q == 0.0:
        boundary = Boundary.NO_ENTRY_LIMIT
    else:
        boundary = Boundary.INTERIOR
    return EntryOutcome(cutoff=cutoff, q=q, policy=policy, boundary=boundary)


def cutoff_individual(
    params: ContestParams, root_tol: float = DEFAULT_ROOT_TOL
) -> EntryOutcome:
    """Entry cutoff of the individual-contest benchmark (m is ignored).

    The marginal entrant wins only when she is the sole entrant, so the
    cutoff solves v * F(v)**(n-1) = omega.  Disclosure does not move it.
    """
    d, n = params.dist, params.n
    lo = d.support_lo
    if params.omega <= lo * float(d.cdf(lo)) ** (n - 1):
        return _outcome(params, lo, Policy.IND)
    cutoff = _interior_root(
        params, lambda v: v * float(d.cdf(v)) ** (n - 1), root_tol
    )
    return _outcome(params, cutoff, Policy.IND)


def cutoff_nd_wd(
    params: ContestParams, root_tol: float = DEFAULT_ROOT_TOL
) -> EntryOutcome:
    """Shared entry cutoff under no disclosure and within-group disclosure.

    Full entry iff omega <= (m-1)/(nm-1) * v_lo; otherwise the unique root
    of v * p_nd_marginal(v) = omega.
    """
    d = params.dist
    lo = d.support_lo
    if params.omega <= (params.m - 1) / (params.nm - 1) * lo:
        return _outcome(params, lo, Policy.ND)
    cutoff = _interior_root(
        params, lambda v: v * float(p_nd_marginal(v, params)), root_tol
    )
    return _outcome(params, cutoff, Policy.ND)


def fd_entry_bonus(v: float, params: ContestParams, tol: float = DEFAULT_TOL) -> float:
    """Bonus A(v) to the marginal type's winning probability under FD.

    The marginal entrant can free-ride on a group mate whose valuation takes
    second place overall; that duel is won with probability t2/(2*t1).
    A >= 0, vanishes identically at m = 1 and at v = v_bar.
    """
    n, m, nm = params.n, params.m, params.nm
    if m == 1:
        return 0.0
    d = params.dist
    u0 = float(d.cdf(v))
    if u0 >= 1.0:
        return 0.0

    def integrand(u1, u2):
        ratio = quantile_ratio(d, u2, u1)
        u2 = np.asarray(u2)
        return 0.5 * ratio * u1 ** (m - 2) * u2 ** (nm - m - 2) * (u1 - u2)

    return m * (m - 1) * (n - 1) * integrate_triangle_u2_outer(integrand, u0, tol)


def cutoff_fd(
    params: ContestParams,
    tol: float = DEFAULT_TOL,
    root_tol: float = DEFAULT_ROOT_TOL,
) -> EntryOutcome:
    """Entry cutoff under full disclosure: root of v*(p_nd(v) + A(v)) = omega.

    Monotonicity of the marginal payoff curve is verified on a coarse grid
    before root finding (the bonus term alone is decreasing in v, so the
    product is not monotone by construction); a violation raises
    :class:`EquilibriumError`.  The FD cutoff never exceeds the ND cutoff.
    """
    d = params.dist
    lo = d.support_lo

    def phi(v: float) -> float:
        if v <= lo and lo == 0.0:
            return 0.0
        return v * (
            float(p_nd_marginal(v, params)) + fd_entry_bonus(v, params, tol)
        )

    if params.omega <= phi(lo):
        return _outcome(params, lo, Policy.FD)

    _verify_phi_monotone(params, phi)
    cutoff = _interior_root(params, phi, root_tol)
    return _outcome(params, cutoff, Policy.FD)


def _verify_phi_monotone(params: ContestParams, phi, n_grid: int = 9) -> None:
    d = params.dist
    if d.has_bounded_support:
        grid = np.linspace(d.support_lo, d.support_hi, n_grid)
    else:
        grid = d.quantile(np.linspace(0.0, 1.0 - 1e-12, n_grid))
    vals = [phi(float(v)) for v in grid]
    for a, b in zip(vals, vals[1:]):
        if b < a - 1e-9 * max(1.0, abs(a)):
            raise EquilibriumError(
                "v * p_fd(v) is not nondecreasing on the cutoff bracket; "
                "cannot certify a unique FD cutoff"
            )


def fd_sufficient_condition_holds(params: ContestParams) -> bool | None:
    """Paper's sufficient condition for an interior FD marginal type.

    omega / v_lo >= (m-1)/(nm-1) * (1 + m(n-1) / (2(nm-1)(nm-m-1))).
    Returns None (not applicable) when nm - m - 1 = 0, i.e. m(n-1) < 2.
    With v_lo = 0 the left side is +inf for omega > 0 and the condition
    holds; at omega = 0 existence is trivial (full entry), reported True.
    """
    n, m, nm = params.n, params.m, params.nm
    if nm - m - 1 <= 0:
        return None
    lo = params.dist.support_lo
    rhs = (m - 1) / (nm - 1) * (1.0 + m * (n - 1) / (2.0 * (nm - 1) * (nm - m - 1)))
    if lo == 0.0:
        return True
    return params.omega / lo >= rhs


def fd_entry_payoff(
    v: float, v_cut: float, params: ContestParams, tol: float = DEFAULT_TOL
) -> float:
    """Expected payoff of an entrant with valuation v under FD, cutoff v_cut.

    All other players follow the cutoff rule and equilibrium bidding.  The
    payoff decomposes over who leads the entrant's group and whether that
    leader ranks first or second among all group leaders:

    * no rival-group entrants: the entrant collects v uncontested;
    * she leads and tops all rival leaders T: duel surplus v - T;
    * a mate with valuation L > v leads and tops T: she free-rides on the
      duel won with probability 1 - T/(2L);
    * the mate ranks second (T > L > all other leaders): win prob L/(2T).

    At v = v_cut this equals v_cut * (p_nd_marginal + A); it is nondecreasing
    in v.  Defined for m >= 2 (the group decomposition is vacuous at m = 1).
    """
    n, m, nm = params.n, params.m, params.nm
    if m < 2:
        raise ValueError("fd_entry_payoff requires m >= 2")
    d = params.dist
    if not v_cut <= v <= d.support_hi:
        raise ValueError(f"need v_cut <= v <= v_bar, got v={v}, v_cut={v_cut}")
    u_star = float(d.cdf(v_cut))
    w = float(d.cdf(v))
    k = nm - m  # rival slots

    # uncontested: no rival-group entrants
    t1 = v * u_star**k

    # she leads and all rival values fall below v
    inner = integrate_1d(lambda s: d.quantile(s) * s ** (k - 1), u_star, w, tol)
    t2 = w ** (m - 1) * (v * (w**k - u_star**k) - k * inner)

    # free-ride, mate leads overall (L > v and L > T)
    def g3(u1, u2):
        ratio = quantile_ratio(d, u2, u1)
        return (1.0 - 0.5 * ratio) * u1 ** (m - 2) * np.asarray(u2) ** (k - 1)

    t3 = v * (m - 1) * k * integrate_triangle(g3, u_star, tol, outer_lo=w)

    # free-ride, mate ranks second among leaders (T > L > rest)
    def g4(u1, u2):
        ratio = quantile_ratio(d, u2, u1)
        return 0.5 * ratio * np.asarray(u2) ** (nm - m - 2) * u1 ** (m - 1)

    t4 = v * m * (n - 1) * (m - 1) * integrate_triangle_u2_outer(g4, w, tol)

    return t1 + t2 + t3 + t4


def solve_entry(
    params: ContestParams,
    policy: Policy,
    tol: float = DEFAULT_TOL,
    root_tol: float = DEFAULT_ROOT_TOL,
) -> EntryOutcome:
    """Entry outcome for the requested disclosure policy."""
    policy = Policy(policy)
    if policy is Policy.IND:
        return cutoff_individual(params, root_tol)
    if policy in (Policy.ND, Policy.WD):
        out = cutoff_nd_wd(params, root_tol)
        return replace(out, policy=policy)
    return cutoff_fd(params, tol, root_tol)
