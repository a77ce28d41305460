"""Equilibrium laboratory for best-shot group contests with endogenous entry.

Computes entry cutoffs, equilibrium bids and expected-investment metrics for
three information-disclosure policies (no disclosure, within-group disclosure,
full disclosure) plus the individual-contest benchmark, cross-validated by a
Monte Carlo simulator that plays the two-stage game forward.
"""

from bestshot.dist import (
    ParetoDistribution,
    PowerDistribution,
    TruncatedParetoDistribution,
    TruncatedView,
    ValueDistribution,
    parse_dist_spec,
)
from bestshot.entry import (
    Boundary,
    ContestParams,
    EntryOutcome,
    Policy,
    cutoff_fd,
    cutoff_individual,
    cutoff_nd_wd,
    fd_entry_bonus,
    fd_entry_payoff,
    fd_sufficient_condition_holds,
    p_nd_marginal,
    solve_entry,
)
from bestshot.bidding import (
    BidTable,
    MixedDuel,
    bid_nd_group,
    bid_nd_individual,
    bid_wd_leader,
    fd_duel,
    sample_fd_bids,
)
from bestshot.metrics import (
    PolicyMetrics,
    agg_fd,
    agg_individual_fd,
    agg_individual_nd,
    agg_nd,
    agg_wd,
    compare_policies,
    max_fd,
    max_nd,
    max_nd_single_form,
    max_wd,
    tot_nd,
)
from bestshot.sim import (
    SimReport,
    best_response_audit,
    simulate,
    simulate_fd_focal_payoff,
    win_prob_nd,
    win_prob_wd,
)

__version__ = "0.1.0"

__all__ = [
    "BidTable",
    "Boundary",
    "ContestParams",
    "EntryOutcome",
    "MixedDuel",
    "ParetoDistribution",
    "Policy",
    "PolicyMetrics",
    "PowerDistribution",
    "SimReport",
    "TruncatedParetoDistribution",
    "TruncatedView",
    "ValueDistribution",
    "agg_fd",
    "agg_individual_fd",
    "agg_individual_nd",
    "agg_nd",
    "agg_wd",
    "best_response_audit",
    "bid_nd_group",
    "bid_nd_individual",
    "bid_wd_leader",
    "compare_policies",
    "cutoff_fd",
    "cutoff_individual",
    "cutoff_nd_wd",
    "fd_duel",
    "fd_entry_bonus",
    "fd_entry_payoff",
    "fd_sufficient_condition_holds",
    "max_fd",
    "max_nd",
    "max_nd_single_form",
    "max_wd",
    "p_nd_marginal",
    "parse_dist_spec",
    "sample_fd_bids",
    "simulate",
    "simulate_fd_focal_payoff",
    "solve_entry",
    "tot_nd",
    "win_prob_nd",
    "win_prob_wd",
]
