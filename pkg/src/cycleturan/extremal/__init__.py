"""Extremal numbers by search, and checks of the supporting inequalities."""

from .checks import (
    CheckResult,
    PreconditionError,
    check_consecutive_odd_constant,
    check_cycle_partition_inequality,
    check_erdos_gallai,
    check_forbidden_cycles_main,
    check_lambda_path_bound,
    check_p2_bound,
    check_random_partition_identity,
    check_triangle_bound,
    check_zarankiewicz,
    find_path,
    find_trimming_sets,
)
from .search import BRUTE_FORCE_LIMIT, ExtremalRecord, brute_force_ex, count_pattern, hill_climb_ex

__all__ = [
    "BRUTE_FORCE_LIMIT",
    "CheckResult",
    "ExtremalRecord",
    "PreconditionError",
    "brute_force_ex",
    "check_consecutive_odd_constant",
    "check_cycle_partition_inequality",
    "check_erdos_gallai",
    "check_forbidden_cycles_main",
    "check_lambda_path_bound",
    "check_p2_bound",
    "check_random_partition_identity",
    "check_triangle_bound",
    "check_zarankiewicz",
    "count_pattern",
    "find_path",
    "find_trimming_sets",
    "hill_climb_ex",
]
