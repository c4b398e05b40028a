"""Strip decomposition, state taxonomy, and plateau exit analysis.

States that admit no gap-decreasing flip are *locked*.  Locked states split
into three families with different escape costs:

* locked states that are not FG states exit their plateau in 1 move,
* easy FG states (two descending strips, rightmost of size 2) in 1 move,
* hard FG states (every other FG state) in 2 moves.

For each family this module produces the concrete move sequence, and
``exit_distance`` independently measures the cost by breadth-first search
over gap-neutral moves so the two can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .core import (
    Flip,
    PancakeState,
    _decreasing_moves,
    _flip,
    _gap_delta,
    _normalized_length,
    is_goal,
)


class PlateauExitError(RuntimeError):
    """A plateau search contradicted the expected topology.

    Never raised in practice; if it fires, a theorem this package encodes
    has a counterexample and the offending state must be reported.
    """


class StripDirection(Enum):
    ASCENDING = "Ascending"
    DESCENDING = "Descending"
    SINGLETON = "Singleton"


@dataclass(frozen=True, slots=True)
class Strip:
    """Maximal gap-free run of positions [start, end], 1-based inclusive."""

    start: int
    end: int
    direction: StripDirection

    @property
    def size(self) -> int:
        return self.end - self.start + 1


class StateClass(Enum):
    GOAL = "Goal"
    EXIT_STATE = "ExitState"
    LOCKED_NON_FG = "LockedNonFG"
    EASY_FG = "EasyFG"
    HARD_FG = "HardFG"


@dataclass(frozen=True, slots=True)
class EscapePlan:
    """Gap-neutral moves to an exit, then one gap-decreasing closing move."""

    moves_to_exit: tuple[Flip, ...]
    closing_move: Flip

    @property
    def length(self) -> int:
        return len(self.moves_to_exit)


# ---------------------------------------------------------------------------
# Tuple-level internals (shared with solver and verify).
# ---------------------------------------------------------------------------


def _strip_bounds(perm: tuple[int, ...]) -> list[tuple[int, int]]:
    # 1-based inclusive bounds; a new strip starts after every internal gap.
    bounds = []
    start = 1
    for j in range(1, len(perm)):
        if abs(perm[j - 1] - perm[j]) > 1:
            bounds.append((start, j))
            start = j + 1
    bounds.append((start, len(perm)))
    return bounds


def _is_fg(perm: tuple[int, ...], bounds: list[tuple[int, int]]) -> bool:
    # FG: at least two strips, all descending, all of size >= 2, in order.
    if len(bounds) < 2:
        return False
    for start, end in bounds:
        if end - start < 1:
            return False
        if perm[start - 1] < perm[start]:
            return False
    for (_, end), (start2, end2) in zip(bounds, bounds[1:]):
        # descending strips: max is the first value, min is the last.
        if perm[end - 1] > perm[end2 - 1]:
            return False
    return True


def _is_normalized(perm: tuple[int, ...]) -> bool:
    return len(perm) == 1 or perm[-1] != len(perm)


def _classify(perm: tuple[int, ...]) -> StateClass:
    n = len(perm)
    if perm[0] == 1 and perm[-1] == n and _normalized_length(perm) == 1:
        return StateClass.GOAL
    if _decreasing_moves(perm):
        return StateClass.EXIT_STATE
    bounds = _strip_bounds(perm)
    if not _is_fg(perm, bounds):
        return StateClass.LOCKED_NON_FG
    last_size = bounds[-1][1] - bounds[-1][0] + 1
    if len(bounds) == 2 and last_size == 2:
        return StateClass.EASY_FG
    return StateClass.HARD_FG


def _find_gap_neutral(perm: tuple[int, ...]) -> int:
    # Constructive gap-neutral move for a locked non-goal state.  A locked
    # state never has n on top (otherwise M_n would remove a gap), so both
    # goal-neighbours of the top pancake are in the stack in case 1.
    n = len(perm)
    top = perm[0]
    if top > 1:
        pos = max(perm.index(top - 1), perm.index(top + 1)) + 1
        return pos - 1
    if perm[1] != 2:
        return perm.index(2)  # position of pancake 2, minus 1
    for ell in range(2, n + 1):
        below = perm[ell] if ell < n else n + 1
        if abs(perm[ell - 1] - below) > 1:
            return ell
    raise PlateauExitError(f"no gap found in non-goal state {perm!r}")


def _plateau_search(perm: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    # BFS restricted to gap-neutral moves; returns (distance, flip path) to
    # the nearest state on the plateau that has a gap-decreasing move.
    if _decreasing_moves(perm):
        return 0, ()
    n = len(perm)
    visited = {perm}
    frontier: list[tuple[tuple[int, ...], tuple[int, ...]]] = [(perm, ())]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for state, path in frontier:
            for k in range(2, n + 1):
                if _gap_delta(state, k) != 0:
                    continue
                child = _flip(state, k)
                if child in visited:
                    continue
                visited.add(child)
                child_path = path + (k,)
                if _decreasing_moves(child):
                    return depth, child_path
                nxt.append((child, child_path))
        frontier = nxt
    raise PlateauExitError(
        f"plateau of {perm!r} has no exit; this contradicts the exit-distance bound"
    )


def _escape_plan(perm: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    n = len(perm)
    cls = _classify(perm)
    if cls is StateClass.EXIT_STATE:
        return (), _decreasing_moves(perm)[0]
    if cls is StateClass.EASY_FG:
        return (n - 1,), n
    if cls is StateClass.HARD_FG:
        start, end = _strip_bounds(perm)[-1]
        return (n, end - start + 1), n
    # Locked non-FG: some gap-neutral move reaches an exit in one step.
    for k in range(2, n + 1):
        if _gap_delta(perm, k) != 0:
            continue
        child = _flip(perm, k)
        closing = _decreasing_moves(child)
        if closing:
            return (k,), closing[0]
    raise PlateauExitError(
        f"locked non-FG state {perm!r} has no 1-step exit; corollary violated"
    )


# ---------------------------------------------------------------------------
# Public operations.
# ---------------------------------------------------------------------------


def strips(state: PancakeState) -> list[Strip]:
    """Decompose the stack into maximal gap-free strips, left to right."""
    perm = state.perm
    out = []
    for start, end in _strip_bounds(perm):
        if start == end:
            direction = StripDirection.SINGLETON
        elif perm[start - 1] > perm[start]:
            direction = StripDirection.DESCENDING
        else:
            direction = StripDirection.ASCENDING
        out.append(Strip(start, end, direction))
    return out


def _require_normalized(state: PancakeState) -> None:
    if not _is_normalized(state.perm):
        raise ValueError(
            f"state {state} has a sorted suffix; apply normalize_suffix first"
        )


def classify_state(state: PancakeState) -> StateClass:
    """Taxonomy cell of a suffix-normalized state."""
    _require_normalized(state)
    return _classify(state.perm)


def find_gap_neutral_move(state: PancakeState) -> Flip:
    """Constructive gap-neutral flip for a locked non-goal state."""
    if is_goal(state):
        raise ValueError("the goal state has no moves worth taking")
    if _decreasing_moves(state.perm):
        raise ValueError(f"state {state} is not locked")
    return _find_gap_neutral(state.perm)


def exit_distance(state: PancakeState) -> int:
    """Minimum number of gap-neutral moves to reach a plateau exit."""
    if is_goal(state):
        raise ValueError("exit distance is undefined for the goal state")
    return _plateau_search(state.perm)[0]


def exit_path(state: PancakeState) -> tuple[Flip, ...]:
    """A shortest gap-neutral flip sequence to a plateau exit."""
    if is_goal(state):
        raise ValueError("exit distance is undefined for the goal state")
    return _plateau_search(state.perm)[1]


def escape_plan(state: PancakeState) -> EscapePlan:
    """Moves to an exit plus the gap-decreasing move available there.

    The plan length always equals ``exit_distance(state)`` and the whole
    plan lowers the gap count by exactly one.
    """
    _require_normalized(state)
    if is_goal(state):
        raise ValueError("the goal state needs no escape plan")
    moves, closing = _escape_plan(state.perm)
    return EscapePlan(moves, closing)
