"""Equilibrium bid functions and the complete-information all-pay duel.

ND and WD entrants bid pure strategies given by truncated integrals of the
form coef * int_{v*}^{v} t F(t)**k dF(t); under FD the two highest-valued
group leaders play the classic two-player all-pay mixed equilibrium, where
the low-value side puts an atom on zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import PchipInterpolator

from bestshot.dist import ValueDistribution
from bestshot.entry import ContestParams, Policy
from bestshot.numerics import DEFAULT_TOL, _NODES, _WEIGHTS, integrate_1d

__all__ = [
    "MixedDuel",
    "bid_nd_individual",
    "bid_nd_group",
    "bid_wd_leader",
    "fd_duel",
    "sample_fd_bids",
    "BidTable",
    "bid_exponent",
    "bid_coefficient",
]


def bid_exponent(policy: Policy, params: ContestParams) -> int:
    """Power of F(t) inside the bid integral for a pure-strategy policy."""
    n, m = params.n, params.m
    if policy is Policy.IND:
        return n - 2
    if policy is Policy.ND:
        return n * m - 2
    if policy is Policy.WD:
        return n * m - m - 1
    raise ValueError(f"no pure-strategy bid function for policy {policy}")


def bid_coefficient(policy: Policy, params: ContestParams) -> int:
    n, m = params.n, params.m
    return (n - 1) if policy is Policy.IND else m * (n - 1)


def _bid_integral(
    params: ContestParams,
    policy: Policy,
    v: float,
    v_cut: float,
    tol: float,
) -> float:
    d = params.dist
    if v < v_cut:
        raise ValueError(f"bid undefined below the cutoff: v={v} < v_cut={v_cut}")
    if v > d.support_hi:
        raise ValueError(f"v={v} above the support")
    k = bid_exponent(policy, params)
    u_lo = float(d.cdf(v_cut))
    u_hi = float(d.cdf(v))
    value = integrate_1d(lambda u: d.quantile(u) * u**k, u_lo, u_hi, tol)
    return bid_coefficient(policy, params) * value


def bid_nd_individual(
    v: float, v_cut: float, params: ContestParams, tol: float = DEFAULT_TOL
) -> float:
    """b(v) = (n-1) * int_{v*}^{v} t F(t)**(n-2) dF(t); individual benchmark."""
    return _bid_integral(params, Policy.IND, v, v_cut, tol)


def bid_nd_group(
    v: float, v_cut: float, params: ContestParams, tol: float = DEFAULT_TOL
) -> float:
    """b(v) = m(n-1) * int_{v*}^{v} t F(t)**(nm-2) dF(t); every ND entrant bids."""
    return _bid_integral(params, Policy.ND, v, v_cut, tol)


def bid_wd_leader(
    v: float, v_cut: float, params: ContestParams, tol: float = DEFAULT_TOL
) -> float:
    """b(v) = m(n-1) * int_{v*}^{v} t F(t)**(nm-m-1) dF(t); WD group leaders only.

    Pointwise >= the ND group bid (strictly above the cutoff when m > 1),
    which drives the stochastic-dominance ranking of highest investments.
    """
    return _bid_integral(params, Policy.WD, v, v_cut, tol)


@dataclass(frozen=True)
class MixedDuel:
    """Two-player complete-information all-pay auction equilibrium.

    The high-value player bids uniformly on [0, v2]; the low-value player
    puts mass ``atom0`` on zero and density 1/v1 on (0, v2].
    """

    v1: float
    v2: float

    def __post_init__(self):
        if not (self.v1 >= self.v2 > 0.0):
            raise ValueError(f"need v1 >= v2 > 0, got v1={self.v1}, v2={self.v2}")

    @property
    def atom0(self) -> float:
        return 1.0 - self.v2 / self.v1

    @property
    def mean_bid_high(self) -> float:
        return self.v2 / 2.0

    @property
    def mean_bid_low(self) -> float:
        return self.v2**2 / (2.0 * self.v1)

    @property
    def win_prob_high(self) -> float:
        return 1.0 - self.v2 / (2.0 * self.v1)

    @property
    def win_prob_low(self) -> float:
        return self.v2 / (2.0 * self.v1)

    @property
    def payoff_high(self) -> float:
        return self.v1 - self.v2

    @property
    def payoff_low(self) -> float:
        return 0.0

    @property
    def mean_max_bid(self) -> float:
        """E[max of the two bids] = v2/2 + v2**2/(6 v1)."""
        return self.v2 / 2.0 + self.v2**2 / (6.0 * self.v1)

    def cdf_high(self, x):
        return np.clip(np.asarray(x, dtype=float) / self.v2, 0.0, 1.0)

    def cdf_low(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x < 0.0, 0.0, np.clip(self.atom0 + x / self.v1, 0.0, 1.0))


def fd_duel(v1: float, v2: float) -> MixedDuel:
    """Equilibrium duel of the two highest-valued leaders under FD."""
    return MixedDuel(v1=v1, v2=v2)


def sample_fd_bids(duel: MixedDuel, rng: np.random.Generator) -> tuple[float, float]:
    """One inverse-cdf draw of (high bid, low bid) from the duel's strategies."""
    u_high = rng.random()
    u_low = rng.random()
    bid_high = u_high * duel.v2
    bid_low = 0.0 if u_low < duel.atom0 else duel.v1 * (u_low - duel.atom0)
    return bid_high, bid_low


def duel_bids_from_uniforms(v1, v2, u_high, u_low):
    """Vectorized inverse-cdf duel bids; used by the simulator."""
    v1 = np.asarray(v1, dtype=float)
    v2 = np.asarray(v2, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        atom0 = np.where(v1 > 0.0, 1.0 - v2 / v1, 0.0)
    bid_high = u_high * v2
    bid_low = np.where(u_low < atom0, 0.0, v1 * (u_low - atom0))
    return bid_high, bid_low


@dataclass
class BidTable:
    """Monotone interpolation table for fast bid evaluation in u = F(v) space.

    1025 Chebyshev-spaced nodes on [F(v*), u_hi] with cumulative Gauss
    segment integration and a PCHIP (monotonicity-preserving) interpolant.
    For unbounded supports the grid stops just short of u = 1; draws beyond
    the cap (probability ~1e-12) are clipped.
    """

    params: ContestParams
    policy: Policy
    v_cut: float
    n_nodes: int = 1025
    u_lo: float = field(init=False)
    u_hi: float = field(init=False)
    _interp: PchipInterpolator = field(init=False, repr=False)

    def __post_init__(self):
        d = self.params.dist
        self.u_lo = float(d.cdf(self.v_cut))
        self.u_hi = 1.0 if d.has_bounded_support else 1.0 - 2.0**-40
        if self.u_hi <= self.u_lo:
            raise ValueError("empty bid domain: cutoff at the top of the support")
        i = np.arange(self.n_nodes)
        cheb = 0.5 * (1.0 - np.cos(np.pi * i / (self.n_nodes - 1)))
        nodes = self.u_lo + (self.u_hi - self.u_lo) * cheb
        k = bid_exponent(self.policy, self.params)
        coef = bid_coefficient(self.policy, self.params)
        # all segment Gauss points in one vectorized evaluation
        a = nodes[:-1, None]
        b = nodes[1:, None]
        half = 0.5 * (b - a)
        x = 0.5 * (a + b) + half * _NODES[None, :]
        seg = np.sum(
            _WEIGHTS[None, :] * d.quantile(x) * x**k, axis=1
        ) * half[:, 0]
        values = coef * np.concatenate(([0.0], np.cumsum(seg)))
        self._interp = PchipInterpolator(nodes, values, extrapolate=False)

    def __call__(self, u):
        u = np.clip(np.asarray(u, dtype=float), self.u_lo, self.u_hi)
        return self._interp(u)

    def at_v(self, v):
        return self(self.params.dist.cdf(v))
