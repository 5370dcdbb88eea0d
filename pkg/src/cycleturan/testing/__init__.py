"""Distances to bipartiteness and C_ell-freeness, and sampling testers."""

from .distance import enumerate_cycles, f_free_distance, min_hitting_set
from .maxcut import EXACT_LIMIT, bipartite_distance, max_cut_exact, max_cut_heuristic
from .testers import (
    RateEntry,
    TestReport,
    TesterConfig,
    komlos_check,
    maxcut_sample_estimate,
    minimal_q_scan,
    one_sided_reject_rate,
    separation_experiment,
    two_sided_reject_rate,
    two_sided_tester,
    wilson_interval,
    witness_complexity_estimate,
)

__all__ = [
    "EXACT_LIMIT",
    "RateEntry",
    "TestReport",
    "TesterConfig",
    "bipartite_distance",
    "enumerate_cycles",
    "f_free_distance",
    "komlos_check",
    "max_cut_exact",
    "max_cut_heuristic",
    "maxcut_sample_estimate",
    "min_hitting_set",
    "minimal_q_scan",
    "one_sided_reject_rate",
    "separation_experiment",
    "two_sided_reject_rate",
    "two_sided_tester",
    "wilson_interval",
    "witness_complexity_estimate",
]
