"""Monte Carlo oracle and exact best-response audit.

The simulator plays the two-stage game forward: draw nm valuations, apply
the entry cutoff, realize equilibrium bids under the requested disclosure
policy, then score aggregate / total / highest investment and the winner.
Replications run in fixed-size batches; the random substream of batch b is a
pure function of (master_seed, b), so results are bit-identical no matter
how batches are scheduled across workers.

The audit side is deterministic: it evaluates the exact winning-probability
sums against the bid functions and reports the maximum one-shot deviation
gain (regret) on a valuation grid.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from bestshot.bidding import BidTable, duel_bids_from_uniforms
from bestshot.dist import TruncatedView
from bestshot.entry import ContestParams, EntryOutcome, Policy, cutoff_nd_wd
from bestshot.numerics import _NODES, _WEIGHTS, DEFAULT_TOL

__all__ = [
    "SimReport",
    "simulate",
    "simulate_fd_focal_payoff",
    "win_prob_nd",
    "win_prob_wd",
    "win_prob_wd_sum",
    "best_response_audit",
]

BATCH_SIZE = 16_384


@dataclass(frozen=True)
class SimReport:
    """Simulation estimates with standard errors and replication metadata."""

    policy: Policy
    reps: int
    master_seed: int
    cutoff: float
    b_aggregate: float
    se_aggregate: float
    b_total: float
    se_total: float
    b_max: float
    se_max: float
    winner_freq: tuple[float, ...]
    frac_zero_active: float
    frac_one_active: float

    def to_json(self) -> str:
        payload = asdict(self)
        payload["policy"] = self.policy.value
        payload["winner_freq"] = list(self.winner_freq)
        return json.dumps(payload, sort_keys=True)


def _batch_rng(master_seed: int, batch_index: int) -> np.random.Generator:
    seq = np.random.SeedSequence((int(master_seed), int(batch_index)))
    return np.random.Generator(np.random.Philox(seq))


def _winner_stats(X, has_group, u_tie, n):
    """Winner index per replication (uniform tie break among eligible argmax)."""
    reps = X.shape[0]
    any_entrant = has_group.any(axis=1)
    Xm = np.where(has_group, X, -np.inf)
    with np.errstate(invalid="ignore"):
        top = Xm.max(axis=1)
    cand = has_group & (Xm == top[:, None])
    cnt = cand.sum(axis=1)
    pick = np.minimum(
        (u_tie * cnt).astype(np.int64), np.maximum(cnt - 1, 0)
    )
    csum = np.cumsum(cand, axis=1)
    sel = cand & (csum == (pick + 1)[:, None])
    win_idx = sel.argmax(axis=1)
    return np.bincount(win_idx[any_entrant], minlength=n)


def _simulate_batch(payload) -> np.ndarray:
    (params, policy, u_star, tab_nd, tab_wd, master_seed, b_idx, b_reps) = payload
    n, m = params.n, params.m
    d = params.dist
    rng = _batch_rng(master_seed, b_idx)
    U = rng.random((b_reps, n, m))
    u_tie = rng.random(b_reps)
    enter = U >= u_star
    rows = np.arange(b_reps)

    if policy is Policy.ND:
        bids = np.zeros((b_reps, n, m))
        if tab_nd is not None:
            bids[enter] = tab_nd(U[enter])
        X = bids.max(axis=2)
        tot = bids.sum(axis=(1, 2))
    elif policy is Policy.WD:
        leadu = np.where(enter, U, -1.0).max(axis=2)
        has = leadu >= u_star
        X = np.zeros((b_reps, n))
        if tab_wd is not None:
            X[has] = tab_wd(leadu[has])
        tot = X.sum(axis=1)
    else:  # FD
        u_duel = rng.random((b_reps, 2))
        leadu = np.where(enter, U, -1.0).max(axis=2)
        has = leadu >= u_star
        active = has.sum(axis=1)
        top1_idx = np.argmax(leadu, axis=1)
        leadu2 = leadu.copy()
        leadu2[rows, top1_idx] = -2.0
        top2_idx = np.argmax(leadu2, axis=1)
        duel = active >= 2
        v1 = np.asarray(d.quantile(np.clip(leadu[rows, top1_idx], 0.0, 1.0)))
        v2 = np.asarray(d.quantile(np.clip(leadu2[rows, top2_idx], 0.0, 1.0)))
        bid_high, bid_low = duel_bids_from_uniforms(
            v1, v2, u_duel[:, 0], u_duel[:, 1]
        )
        X = np.zeros((b_reps, n))
        X[rows, top1_idx] = np.where(duel, bid_high, 0.0)
        X[rows, top2_idx] = np.where(duel, bid_low, 0.0)
        tot = X.sum(axis=1)

    has_group = enter.any(axis=2)
    agg = X.sum(axis=1)
    mx = X.max(axis=1)
    winner_counts = _winner_stats(X, has_group, u_tie, n)
    n_active = has_group.sum(axis=1)

    out = np.empty(8 + n)
    out[0] = agg.sum()
    out[1] = np.square(agg).sum()
    out[2] = tot.sum()
    out[3] = np.square(tot).sum()
    out[4] = mx.sum()
    out[5] = np.square(mx).sum()
    out[6] = (n_active == 0).sum()
    out[7] = (n_active == 1).sum()
    out[8:] = winner_counts
    return out


def _mean_se(s: float, s2: float, n: int) -> tuple[float, float]:
    mean = s / n
    var = max(s2 - s * s / n, 0.0) / (n - 1)
    return mean, math.sqrt(var / n)


def _check_policy_entry(policy: Policy, entry: EntryOutcome) -> None:
    group = {Policy.ND, Policy.WD, Policy.IND}
    if policy is Policy.FD:
        if entry.policy is not Policy.FD:
            raise ValueError("FD simulation needs an FD entry outcome")
    elif entry.policy not in group:
        raise ValueError(f"{policy} simulation given {entry.policy} entry outcome")


def simulate(
    params: ContestParams,
    policy: Policy,
    entry: EntryOutcome,
    reps: int,
    master_seed: int,
    workers: int = 1,
    batch_size: int = BATCH_SIZE,
) -> SimReport:
    """Play the contest forward for ``reps`` replications.

    Protocol per replication: draw nm valuations i.i.d. from F; a player
    enters iff v >= cutoff.  ND: every entrant bids the ND group bid.  WD:
    each group's leader bids the WD leader bid, others zero.  FD: with two or
    more active groups the two highest-valued leaders play the mixed duel,
    everyone else bids zero; a lone active group bids zero (uncontested); the
    winner is the eligible group with the largest best shot, ties broken
    uniformly.  Identical (master_seed, reps, batch_size) give bit-identical
    reports for any worker count.
    """
    policy = Policy(policy)
    if policy is Policy.IND:
        if params.m != 1:
            raise ValueError("IND policy requires m = 1")
        policy = Policy.ND
    _check_policy_entry(policy, entry)
    if reps <= 1:
        raise ValueError("need reps > 1")
    u_star = float(params.dist.cdf(entry.cutoff))
    tab_nd = tab_wd = None
    if u_star < 1.0:
        if policy is Policy.ND:
            tab_nd = BidTable(params, Policy.ND, entry.cutoff)
        elif policy is Policy.WD:
            tab_wd = BidTable(params, Policy.WD, entry.cutoff)

    n_batches = (reps + batch_size - 1) // batch_size
    payloads = [
        (
            params,
            policy,
            u_star,
            tab_nd,
            tab_wd,
            master_seed,
            b,
            min(batch_size, reps - b * batch_size),
        )
        for b in range(n_batches)
    ]
    if workers > 1 and n_batches > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_simulate_batch, payloads, chunksize=4))
    else:
        results = [_simulate_batch(p) for p in payloads]
    stats = np.sum(np.stack(results, axis=0), axis=0)

    agg_mean, agg_se = _mean_se(stats[0], stats[1], reps)
    tot_mean, tot_se = _mean_se(stats[2], stats[3], reps)
    max_mean, max_se = _mean_se(stats[4], stats[5], reps)
    return SimReport(
        policy=policy,
        reps=reps,
        master_seed=master_seed,
        cutoff=entry.cutoff,
        b_aggregate=agg_mean,
        se_aggregate=agg_se,
        b_total=tot_mean,
        se_total=tot_se,
        b_max=max_mean,
        se_max=max_se,
        winner_freq=tuple(float(c) / reps for c in stats[8:]),
        frac_zero_active=float(stats[6]) / reps,
        frac_one_active=float(stats[7]) / reps,
    )


def _focal_batch(payload) -> np.ndarray:
    (params, u_star, w_focal, v_focal, master_seed, b_idx, b_reps) = payload
    n, m, nm = params.n, params.m, params.nm
    d = params.dist
    rng = _batch_rng(master_seed, b_idx)
    U = rng.random((b_reps, nm - 1))
    u_duel = rng.random((b_reps, 2))

    if m > 1:
        mate_lead = np.where(U[:, : m - 1] >= u_star, U[:, : m - 1], -1.0).max(axis=1)
    else:
        mate_lead = np.full(b_reps, -1.0)
    others = U[:, m - 1 :].reshape(b_reps, n - 1, m)
    rival_lead = np.where(others >= u_star, others, -1.0).max(axis=2)
    rival_sorted = np.sort(rival_lead, axis=1)
    T_u = rival_sorted[:, -1]
    T2_u = rival_sorted[:, -2] if n - 1 >= 2 else np.full(b_reps, -1.0)

    focal_leads = w_focal >= mate_lead
    g0_u = np.maximum(mate_lead, w_focal)
    g0_v = np.where(
        focal_leads, v_focal, np.asarray(d.quantile(np.clip(g0_u, 0.0, 1.0)))
    )
    has_rival = T_u >= 0.0
    T_v = np.asarray(d.quantile(np.clip(T_u, 0.0, 1.0)))

    # duel roles: group-0 leader is high when she tops all rival leaders
    g0_high = has_rival & (g0_u > T_u)
    g0_low = has_rival & (T_u > g0_u) & (g0_u > T2_u)
    v_hi = np.where(g0_high, g0_v, T_v)
    v_lo = np.where(g0_high, T_v, g0_v)
    bid_hi, bid_lo = duel_bids_from_uniforms(v_hi, v_lo, u_duel[:, 0], u_duel[:, 1])
    g0_bid = np.where(g0_high, bid_hi, np.where(g0_low, bid_lo, 0.0))
    rival_bid = np.where(g0_high, bid_lo, bid_hi)
    group_wins = np.where(
        has_rival,
        np.where(g0_high | g0_low, g0_bid > rival_bid, False),
        True,
    )
    focal_pays = np.where(focal_leads & (g0_high | g0_low), g0_bid, 0.0)
    payoff = v_focal * group_wins - focal_pays
    return np.array([payoff.sum(), np.square(payoff).sum()])


def simulate_fd_focal_payoff(
    params: ContestParams,
    entry: EntryOutcome,
    v_focal: float,
    reps: int,
    master_seed: int,
    workers: int = 1,
    batch_size: int = BATCH_SIZE,
) -> tuple[float, float]:
    """Estimated FD entry payoff of a focal type v_focal vs. equilibrium play.

    The focal player occupies one slot of group 0, enters, and follows the FD
    equilibrium (bid only when her group leads or ranks second among group
    leaders, sampling the duel strategies).  Returns (mean, standard error);
    with v_focal at the FD cutoff the mean estimates the marginal entrant's
    payoff, which must match the outside option.
    """
    if not entry.cutoff <= v_focal <= params.dist.support_hi:
        raise ValueError("v_focal must lie in [cutoff, v_bar]")
    u_star = float(params.dist.cdf(entry.cutoff))
    w_focal = float(params.dist.cdf(v_focal))
    n_batches = (reps + batch_size - 1) // batch_size
    payloads = [
        (
            params,
            u_star,
            w_focal,
            v_focal,
            master_seed,
            b,
            min(batch_size, reps - b * batch_size),
        )
        for b in range(n_batches)
    ]
    if workers > 1 and n_batches > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_focal_batch, payloads, chunksize=4))
    else:
        results = [_focal_batch(p) for p in payloads]
    stats = np.sum(np.stack(results, axis=0), axis=0)
    return _mean_se(stats[0], stats[1], reps)


def win_prob_nd(v_hat, v_cut: float, params: ContestParams):
    """Winning probability of an ND entrant bidding as type v_hat.

    Full free-riding double sum over the number of entrants in the player's
    own group (k1) and in other groups (k2), using the entrant-distribution
    cdf.  The free-riding term k1/(k1+k2) covers wins through a higher-valued
    group mate.
    """
    n, m, nm = params.n, params.m, params.nm
    q = 1.0 - float(params.dist.cdf(v_cut))
    v_hat = np.asarray(v_hat, dtype=float)
    if q == 0.0:
        return np.ones_like(v_hat)
    ft = TruncatedView(params.dist, v_cut).cdf(v_hat)
    total = np.full_like(ft, (1.0 - q) ** (nm - m))
    for k1 in range(0, m):
        for k2 in range(1, nm - m + 1):
            weight = (
                math.comb(m - 1, k1)
                * math.comb(nm - m, k2)
                * q ** (k1 + k2)
                * (1.0 - q) ** (nm - 1 - k1 - k2)
            )
            fk = ft ** (k1 + k2)
            total += weight * (fk + (1.0 - fk) * (k1 / (k1 + k2)))
    return total


def win_prob_wd(v_hat, v_cut: float, params: ContestParams):
    """Winning probability of a WD leader bidding as type v_hat.

    Binomial closed form (q * F_tilde(v_hat) + 1 - q)**(nm-m): the leader
    wins iff her valuation tops every rival slot, entered or not.  Agrees
    with the explicit sum :func:`win_prob_wd_sum` to machine precision.
    """
    nm, m = params.nm, params.m
    q = 1.0 - float(params.dist.cdf(v_cut))
    v_hat = np.asarray(v_hat, dtype=float)
    if q == 0.0:
        return np.ones_like(v_hat)
    ft = TruncatedView(params.dist, v_cut).cdf(v_hat)
    return (q * ft + 1.0 - q) ** (nm - m)


def win_prob_wd_sum(v_hat, v_cut: float, params: ContestParams):
    """Explicit binomial sum form of :func:`win_prob_wd` (reference)."""
    nm, m = params.nm, params.m
    q = 1.0 - float(params.dist.cdf(v_cut))
    v_hat = np.asarray(v_hat, dtype=float)
    if q == 0.0:
        return np.ones_like(v_hat)
    ft = TruncatedView(params.dist, v_cut).cdf(v_hat)
    total = np.full_like(ft, (1.0 - q) ** (nm - m))
    for k2 in range(1, nm - m + 1):
        weight = math.comb(nm - m, k2) * q**k2 * (1.0 - q) ** (nm - m - k2)
        total += weight * ft**k2
    return total


def _cumulative_bids(
    params: ContestParams, policy: Policy, u_star: float, u_points: np.ndarray
):
    """Exact bids at arbitrary u points via per-segment Gauss panels from u_star."""
    from bestshot.bidding import bid_coefficient, bid_exponent

    d = params.dist
    k = bid_exponent(policy, params)
    coef = bid_coefficient(policy, params)
    order = np.argsort(u_points, kind="stable")
    u_grid = np.concatenate(([u_star], u_points[order]))
    a = u_grid[:-1, None]
    b = u_grid[1:, None]
    half = 0.5 * (b - a)
    x = 0.5 * (a + b) + half * _NODES[None, :]
    seg = np.sum(_WEIGHTS[None, :] * d.quantile(x) * x**k, axis=1) * half[:, 0]
    sorted_bids = coef * np.cumsum(seg)
    out = np.empty_like(u_points)
    out[order] = sorted_bids
    return out


def best_response_audit(
    params: ContestParams,
    policy: Policy,
    v_grid=None,
    vhat_grid=None,
    bid_fn=None,
) -> float:
    """Maximum one-shot deviation gain against the candidate ND/WD equilibrium.

    For each valuation v on ``v_grid`` the best deviation payoff over
    ``vhat_grid`` is compared with truthful play:
    regret(v) = max_vhat [v p(vhat) - b(vhat)] - [v p(v) - b(v)].
    Nonpositive regret up to quadrature noise certifies consistency of the
    entry cutoff, the bid function, and the exact winning-probability sums.
    ``bid_fn`` (mapping a valuation array to bids) substitutes the bid
    function, which is how a deliberately broken bid is shown to fail.
    """
    policy = Policy(policy)
    if policy not in (Policy.ND, Policy.WD):
        raise ValueError("audit covers the pure-strategy policies nd and wd")
    if not params.dist.has_bounded_support:
        raise ValueError("audit grids need a bounded support")
    entry = cutoff_nd_wd(params)
    lo, hi = entry.cutoff, params.dist.support_hi
    if v_grid is None:
        v_grid = np.linspace(lo, hi, 101)
    if vhat_grid is None:
        vhat_grid = np.linspace(lo, hi, 1001)
    v_grid = np.asarray(v_grid, dtype=float)
    vhat_grid = np.sort(np.asarray(vhat_grid, dtype=float))
    win = win_prob_nd if policy is Policy.ND else win_prob_wd

    u_star = float(params.dist.cdf(lo))

    def bids_on(grid):
        if bid_fn is not None:
            return np.asarray(bid_fn(grid), dtype=float)
        u = np.asarray(params.dist.cdf(grid), dtype=float)
        return _cumulative_bids(params, policy, u_star, u)

    p_hat = np.asarray(win(vhat_grid, lo, params), dtype=float)
    b_hat = bids_on(vhat_grid)
    p_self = np.asarray(win(v_grid, lo, params), dtype=float)
    b_self = bids_on(v_grid)

    payoff_dev = v_grid[:, None] * p_hat[None, :] - b_hat[None, :]
    payoff_self = v_grid * p_self - b_self
    regret = payoff_dev.max(axis=1) - payoff_self
    return float(regret.max())
