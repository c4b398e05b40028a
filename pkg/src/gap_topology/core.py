"""Pancake stacks, prefix-reversal flips, and gap counting.

A stack of n pancakes is a permutation of 1..n with position 1 at the top.
The flip M_k reverses the first k positions.  A gap sits between two
consecutive positions whose values differ by more than 1, counting the
virtual plate of value n+1 below the stack; the number of gaps is the
heuristic everything else in this package is built on.

Positions are 1-based in every public contract.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

# A flip is just its index k (reverse the first k pancakes), 2 <= k <= n.
Flip = int


class MoveClass(Enum):
    DECREASING = "Decreasing"
    NEUTRAL = "Neutral"
    INCREASING = "Increasing"


@dataclass(frozen=True, slots=True)
class PancakeState:
    """Immutable pancake stack; ``perm[0]`` is the top of the stack."""

    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        perm = tuple(self.perm)
        object.__setattr__(self, "perm", perm)
        n = len(perm)
        if n < 1:
            raise ValueError("a pancake stack needs at least one pancake")
        if sorted(perm) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {perm!r}")

    @property
    def n(self) -> int:
        return len(self.perm)

    def __str__(self) -> str:
        return format_permutation(self)


# ---------------------------------------------------------------------------
# Internal tuple-level primitives.  Public operations validate their inputs
# and delegate here; enumeration-heavy callers (verify, solver) use these
# directly on raw tuples to avoid per-state wrapper overhead.
# ---------------------------------------------------------------------------


def _flip(perm: tuple[int, ...], k: int) -> tuple[int, ...]:
    return perm[k - 1 :: -1] + perm[k:]


def _gap_count(perm: tuple[int, ...]) -> int:
    n = len(perm)
    gaps = 0
    prev = perm[0]
    for j in range(1, n):
        cur = perm[j]
        if cur - prev > 1 or prev - cur > 1:
            gaps += 1
        prev = cur
    if n + 1 - prev > 1:
        gaps += 1
    return gaps


def _gap_delta(perm: tuple[int, ...], k: int) -> int:
    # M_k only touches the boundary pair (k, k+1): position k receives the
    # old top while position k+1 is untouched.
    n = len(perm)
    below = perm[k] if k < n else n + 1
    before = perm[k - 1] - below
    after = perm[0] - below
    return int(after > 1 or after < -1) - int(before > 1 or before < -1)


def _decreasing_moves(perm: tuple[int, ...]) -> tuple[int, ...]:
    # M_k removes a gap only when the value below the flipped prefix is a
    # goal-neighbour of the top pancake, so there are at most two candidates.
    n = len(perm)
    top = perm[0]
    moves = []
    for value in (top - 1, top + 1):
        if value < 1:
            continue
        pos = n + 1 if value == n + 1 else perm.index(value) + 1
        k = pos - 1
        if k < 2:
            continue
        if abs(perm[k - 1] - value) > 1:
            moves.append(k)
    moves.sort()
    return tuple(moves)


def _normalized_length(perm: tuple[int, ...]) -> int:
    m = len(perm)
    while m > 1 and perm[m - 1] == m:
        m -= 1
    return m


def _check_flip(n: int, k: int) -> None:
    if not isinstance(k, int) or k < 2 or k > n:
        raise ValueError(f"flip index must satisfy 2 <= k <= {n}, got {k!r}")


# ---------------------------------------------------------------------------
# Public operations.
# ---------------------------------------------------------------------------


def apply_flip(state: PancakeState, k: Flip) -> PancakeState:
    """Reverse the first k pancakes of the stack."""
    _check_flip(state.n, k)
    return PancakeState(_flip(state.perm, k))


def extended_at(state: PancakeState, i: int) -> int:
    """Value at 1-based position i, where position n+1 is the plate (n+1)."""
    n = state.n
    if not isinstance(i, int) or i < 1 or i > n + 1:
        raise ValueError(f"position must satisfy 1 <= i <= {n + 1}, got {i!r}")
    if i == n + 1:
        return n + 1
    return state.perm[i - 1]


def gap_count(state: PancakeState) -> int:
    """Number of non-adjacent consecutive pairs, plate included."""
    return _gap_count(state.perm)


def classify_move(state: PancakeState, k: Flip) -> MoveClass:
    """Effect of M_k on the gap count: decreasing, neutral, or increasing."""
    _check_flip(state.n, k)
    delta = _gap_delta(state.perm, k)
    if delta < 0:
        return MoveClass.DECREASING
    if delta > 0:
        return MoveClass.INCREASING
    return MoveClass.NEUTRAL


def gap_decreasing_moves(state: PancakeState) -> tuple[Flip, ...]:
    """All gap-decreasing flips, ascending.  Never more than two exist."""
    return _decreasing_moves(state.perm)


def is_locked(state: PancakeState) -> bool:
    """True when no flip can remove a gap (vacuously true for the goal)."""
    return not _decreasing_moves(state.perm)


def is_goal(state: PancakeState) -> bool:
    perm = state.perm
    return all(perm[i] == i + 1 for i in range(len(perm)))


def normalize_suffix(state: PancakeState) -> PancakeState:
    """Drop an already-sorted bottom portion of the stack.

    The gap count and the optimal solution cost are unchanged.  The goal
    state normalizes to the one-pancake stack rather than an empty one.
    """
    m = _normalized_length(state.perm)
    if m == state.n:
        return state
    return PancakeState(state.perm[:m])


# ---------------------------------------------------------------------------
# Text format: comma-separated values, e.g. "2,1,4,3".
# ---------------------------------------------------------------------------


def parse_permutation(text: str) -> PancakeState:
    """Parse "2,1,4,3" into a state; reject anything that is not a permutation."""
    tokens = [t.strip() for t in text.split(",")]
    if tokens == [""]:
        raise ValueError("empty permutation")
    values = []
    for token in tokens:
        try:
            value = int(token)
        except ValueError:
            raise ValueError(f"invalid permutation token: {token!r}") from None
        if value < 1:
            raise ValueError(f"invalid permutation token: {token!r} (values start at 1)")
        values.append(value)
    n = len(values)
    seen = set()
    for value in values:
        if value > n:
            raise ValueError(f"invalid permutation token: {value!r} (exceeds n={n})")
        if value in seen:
            raise ValueError(f"invalid permutation token: {value!r} (duplicate)")
        seen.add(value)
    return PancakeState(tuple(values))


def format_permutation(state: PancakeState) -> str:
    return ",".join(str(v) for v in state.perm)
