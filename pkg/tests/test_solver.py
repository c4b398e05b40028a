"""Solver tests against an independent brute-force distance oracle."""

import itertools

import pytest

from gap_topology.core import PancakeState, apply_flip, gap_count, is_goal, is_locked
from gap_topology.core import normalize_suffix
from gap_topology.solver import (
    CapacityError,
    greedy_solve,
    optimal_solve,
    _ida_star,
)


def S(*values):
    return PancakeState(tuple(values))


def all_states(n):
    for perm in itertools.permutations(range(1, n + 1)):
        yield PancakeState(perm)


def brute_force_distances(n):
    # Independent oracle: breadth-first search outward from the goal,
    # written without any package internals.
    goal = tuple(range(1, n + 1))
    dist = {goal: 0}
    frontier = [goal]
    while frontier:
        nxt = []
        for perm in frontier:
            for k in range(2, n + 1):
                child = perm[:k][::-1] + perm[k:]
                if child not in dist:
                    dist[child] = dist[perm] + 1
                    nxt.append(child)
        frontier = nxt
    return dist


def replay(state, moves):
    for k in moves:
        state = apply_flip(state, k)
    return state


def test_optimal_examples():
    assert optimal_solve(S(1, 2, 3, 4)).length == 0
    assert optimal_solve(S(2, 1, 4, 3)).length == 3
    # Value frozen from the brute-force oracle below.
    assert optimal_solve(S(2, 1, 5, 4, 3)).length == 4
    assert brute_force_distances(5)[(2, 1, 5, 4, 3)] == 4


def test_optimal_matches_brute_force():
    for n in range(1, 6):
        dist = brute_force_distances(n)
        for state in all_states(n):
            result = optimal_solve(state)
            assert result.length == dist[state.perm]
            assert result.initial_gap_count == gap_count(state)
            assert is_goal(replay(state, result.moves))


def test_forward_search_agrees_with_table():
    # Two independent oracle routes: iterative deepening from the state vs
    # the breadth-first table from the goal.
    for n in range(1, 6):
        for state in all_states(n):
            assert len(_ida_star(state.perm)) == optimal_solve(state).length


def test_optimal_admissibility_and_locked_bound():
    for n in range(2, 7):
        for state in all_states(n):
            length = optimal_solve(state).length
            gaps = gap_count(state)
            assert gaps <= length
            if is_locked(state) and not is_goal(state):
                assert length >= gaps + 1


def test_normalize_suffix_preserves_optimal_cost():
    for n in range(1, 8):
        for state in all_states(n):
            assert (
                optimal_solve(normalize_suffix(state)).length
                == optimal_solve(state).length
            )


def test_optimal_capacity_error():
    big = PancakeState(tuple(range(1, 11)))
    with pytest.raises(CapacityError, match="9"):
        optimal_solve(big)
    with pytest.raises(CapacityError, match="4"):
        optimal_solve(S(2, 1, 5, 4, 3), limit=4)


def test_oracle_limit_env_override(monkeypatch):
    monkeypatch.setenv("GAP_TOPOLOGY_ORACLE_LIMIT", "3")
    with pytest.raises(CapacityError, match="3"):
        optimal_solve(S(2, 1, 4, 3))
    # Raising the limit past the table size switches to iterative deepening.
    monkeypatch.setenv("GAP_TOPOLOGY_ORACLE_LIMIT", "10")
    nearly = apply_flip(PancakeState(tuple(range(1, 11))), 4)
    assert optimal_solve(nearly).moves == (4,)


def test_greedy_examples():
    assert greedy_solve(S(1, 2, 3)).moves == ()
    assert greedy_solve(S(2, 1, 4, 3)).moves == (3, 4, 3)
    result = greedy_solve(S(2, 1, 5, 4, 3))
    assert result.length <= 3 * result.initial_gap_count


def test_greedy_sorts_within_bound_exhaustive():
    for n in range(1, 7):
        for state in all_states(n):
            result = greedy_solve(state)
            assert result.length == len(result.moves)
            assert is_goal(replay(state, result.moves))
            assert result.length <= 3 * gap_count(state)
            assert result.length >= optimal_solve(state).length


def test_greedy_deterministic():
    state = S(5, 2, 7, 1, 6, 3, 4)
    assert greedy_solve(state).moves == greedy_solve(state).moves
    assert optimal_solve(state).moves == optimal_solve(state).moves
