"""Optimal-cost oracle and the topology-guided greedy solver.

The oracle keeps a full breadth-first distance table from the goal for
small stacks (the table doubles as the verification oracle) and falls back
to iterative deepening guided by the gap count for single larger queries.
Both solvers are deterministic: the same input always yields the same
move sequence.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass

from .core import (
    Flip,
    PancakeState,
    _decreasing_moves,
    _flip,
    _gap_count,
    _normalized_length,
)
from .topology import _escape_plan

DEFAULT_ORACLE_LIMIT = 9
ORACLE_LIMIT_ENV = "GAP_TOPOLOGY_ORACLE_LIMIT"
# Largest n for which the full distance table is built; beyond this single
# queries use iterative deepening instead.
TABLE_MAX_N = 9


class CapacityError(ValueError):
    """A requested size exceeds what the implementation will attempt."""


@dataclass(frozen=True, slots=True)
class SolveResult:
    moves: tuple[Flip, ...]
    length: int
    initial_gap_count: int


def oracle_limit() -> int:
    """Size cap for optimal_solve; overridable via GAP_TOPOLOGY_ORACLE_LIMIT."""
    raw = os.environ.get(ORACLE_LIMIT_ENV)
    if raw is None:
        return DEFAULT_ORACLE_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{ORACLE_LIMIT_ENV} must be an integer, got {raw!r}") from None


_tables: dict[int, dict[bytes, int]] = {}
_tables_lock = threading.Lock()


def _build_table(n: int) -> dict[bytes, int]:
    # Plain BFS from the goal over packed states; flips are involutions so
    # distance from the goal equals distance to it.
    goal = tuple(range(1, n + 1))
    dist = {bytes(goal): 0}
    frontier = [goal]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for perm in frontier:
            for k in range(2, n + 1):
                child = perm[k - 1 :: -1] + perm[k:]
                key = bytes(child)
                if key not in dist:
                    dist[key] = depth
                    nxt.append(child)
        frontier = nxt
    return dist


def distance_table(n: int) -> dict[bytes, int]:
    """Distances to the goal for every n-pancake state, keyed by bytes(perm).

    Built once per n and cached; safe for concurrent reads afterwards.
    """
    if n < 1 or n > TABLE_MAX_N:
        raise CapacityError(f"distance table supports 1 <= n <= {TABLE_MAX_N}, got {n}")
    with _tables_lock:
        table = _tables.get(n)
        if table is None:
            table = _build_table(n)
            _tables[n] = table
    return table


def _table_moves(perm: tuple[int, ...], table: dict[bytes, int]) -> tuple[int, ...]:
    # Walk downhill through the distance table, smallest flip index first.
    n = len(perm)
    moves = []
    d = table[bytes(perm)]
    while d > 0:
        for k in range(2, n + 1):
            child = _flip(perm, k)
            if table[bytes(child)] == d - 1:
                moves.append(k)
                perm = child
                d -= 1
                break
        else:
            raise AssertionError(f"distance table has no descent from {perm!r}")
    return tuple(moves)


def _ida_star(perm: tuple[int, ...]) -> tuple[int, ...]:
    # Iterative deepening with the gap count as the (admissible) heuristic.
    n = len(perm)
    goal = tuple(range(1, n + 1))
    if perm == goal:
        return ()

    def search(node: tuple[int, ...], g: int, bound: int, last: int, path: list[int]):
        f = g + _gap_count(node)
        if f > bound:
            return f
        if node == goal:
            return True
        minimum = None
        for k in range(2, n + 1):
            if k == last:  # flips are involutions; undoing is never optimal
                continue
            path.append(k)
            t = search(_flip(node, k), g + 1, bound, k, path)
            if t is True:
                return True
            path.pop()
            if t is not None and (minimum is None or t < minimum):
                minimum = t
        return minimum

    bound = _gap_count(perm)
    while True:
        path: list[int] = []
        t = search(perm, 0, bound, 0, path)
        if t is True:
            return tuple(path)
        if t is None:
            raise AssertionError(f"no solution found for {perm!r}")
        bound = t


def optimal_solve(state: PancakeState, limit: int | None = None) -> SolveResult:
    """Shortest flip sequence to the goal.

    Raises CapacityError when the stack exceeds the oracle limit
    (default 9, override with GAP_TOPOLOGY_ORACLE_LIMIT or ``limit``).
    """
    cap = oracle_limit() if limit is None else limit
    n = state.n
    if n > cap:
        raise CapacityError(
            f"optimal_solve supports n <= {cap} (oracle limit); got n = {n}"
        )
    perm = state.perm
    gaps = _gap_count(perm)
    if n <= TABLE_MAX_N:
        moves = _table_moves(perm, distance_table(n))
    else:
        moves = _ida_star(perm)
    return SolveResult(moves, len(moves), gaps)


def greedy_solve(state: PancakeState) -> SolveResult:
    """Sort the stack using the escape plans; at most 3 moves per gap.

    Whenever a gap-decreasing flip exists the smallest one is applied;
    otherwise the escape plan of the suffix-normalized prefix is played out
    (its flips land inside the prefix, so indices carry over unchanged).
    """
    perm = state.perm
    n = len(perm)
    goal = tuple(range(1, n + 1))
    initial_gaps = _gap_count(perm)
    budget = 3 * initial_gaps
    moves: list[int] = []
    while perm != goal:
        if len(moves) >= budget:
            raise AssertionError(f"greedy exceeded {budget} moves on {state}")
        dec = _decreasing_moves(perm)
        if dec:
            k = dec[0]
            perm = _flip(perm, k)
            moves.append(k)
            continue
        prefix = perm[: _normalized_length(perm)]
        plan_moves, closing = _escape_plan(prefix)
        for k in plan_moves + (closing,):
            perm = _flip(perm, k)
            moves.append(k)
    return SolveResult(tuple(moves), len(moves), initial_gaps)
