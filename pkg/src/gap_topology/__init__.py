"""Pancake puzzle gap heuristic: taxonomy, exit distances, solvers, verification."""

from .core import (
    Flip,
    MoveClass,
    PancakeState,
    apply_flip,
    classify_move,
    extended_at,
    format_permutation,
    gap_count,
    gap_decreasing_moves,
    is_goal,
    is_locked,
    normalize_suffix,
    parse_permutation,
)
from .solver import (
    CapacityError,
    SolveResult,
    distance_table,
    greedy_solve,
    optimal_solve,
    oracle_limit,
)
from .topology import (
    EscapePlan,
    PlateauExitError,
    StateClass,
    Strip,
    StripDirection,
    classify_state,
    escape_plan,
    exit_distance,
    exit_path,
    find_gap_neutral_move,
    strips,
)
from .verify import (
    VerificationReport,
    Violation,
    census,
    enumerate_states,
    verify_theorems,
)

__all__ = [
    "CapacityError",
    "EscapePlan",
    "Flip",
    "MoveClass",
    "PancakeState",
    "PlateauExitError",
    "SolveResult",
    "StateClass",
    "Strip",
    "StripDirection",
    "VerificationReport",
    "Violation",
    "apply_flip",
    "census",
    "classify_move",
    "classify_state",
    "distance_table",
    "enumerate_states",
    "escape_plan",
    "exit_distance",
    "exit_path",
    "extended_at",
    "find_gap_neutral_move",
    "format_permutation",
    "gap_count",
    "gap_decreasing_moves",
    "greedy_solve",
    "is_goal",
    "is_locked",
    "normalize_suffix",
    "optimal_solve",
    "oracle_limit",
    "parse_permutation",
    "strips",
    "verify_theorems",
]
