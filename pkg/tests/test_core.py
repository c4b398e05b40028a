"""Unit tests for stacks, flips, gap counting, and the text format."""

import itertools

import pytest

from gap_topology.core import (
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


def S(*values):
    return PancakeState(tuple(values))


def all_states(n):
    for perm in itertools.permutations(range(1, n + 1)):
        yield PancakeState(perm)


def test_state_rejects_non_permutations():
    for bad in ((), (0, 1), (1, 1), (2, 3), (1, 2, 4)):
        with pytest.raises(ValueError):
            PancakeState(bad)


def test_state_accepts_lists():
    assert PancakeState([2, 1]).perm == (2, 1)


def test_apply_flip_examples():
    assert apply_flip(S(2, 1, 4, 3), 3).perm == (4, 1, 2, 3)
    assert apply_flip(S(1, 2, 3), 3).perm == (3, 2, 1)


def test_apply_flip_rejects_bad_indices():
    for k in (0, 1, 5):
        with pytest.raises(ValueError):
            apply_flip(S(2, 1, 4, 3), k)


def test_apply_flip_involution_and_validity():
    # Every flip applied twice restores the state; results stay permutations
    # (apply_flip validates on construction).
    for n in range(1, 9):
        for state in all_states(n):
            for k in range(2, n + 1):
                assert apply_flip(apply_flip(state, k), k) == state


def test_extended_at():
    s = S(2, 1, 4, 3)
    assert extended_at(s, 5) == 5
    assert extended_at(s, 1) == 2
    assert extended_at(S(1), 2) == 2
    for i in (0, 6):
        with pytest.raises(ValueError):
            extended_at(s, i)


@pytest.mark.parametrize(
    "perm,expected",
    [
        ((1, 2, 3, 4), 0),
        ((2, 1, 4, 3), 2),
        ((2, 1, 4, 3, 5, 6, 7), 2),
        ((2, 1, 3, 5, 4), 3),
        ((1,), 0),
        ((2, 1), 1),
    ],
)
def test_gap_count(perm, expected):
    assert gap_count(PancakeState(perm)) == expected


def test_goal_iff_zero_gaps_small():
    for n in range(1, 7):
        for state in all_states(n):
            assert is_goal(state) == (gap_count(state) == 0)


@pytest.mark.parametrize(
    "perm,k,expected",
    [
        ((2, 1, 4, 3), 3, MoveClass.NEUTRAL),
        ((2, 1, 3, 5, 4), 2, MoveClass.DECREASING),
        ((1, 2, 3, 4), 2, MoveClass.INCREASING),
    ],
)
def test_classify_move_examples(perm, k, expected):
    assert classify_move(PancakeState(perm), k) is expected


def test_classify_move_rejects_bad_flip():
    with pytest.raises(ValueError):
        classify_move(S(2, 1), 3)


def test_classify_move_matches_recomputation():
    # Reference semantics: the class is the sign of the recounted gap delta.
    signs = {
        -1: MoveClass.DECREASING,
        0: MoveClass.NEUTRAL,
        1: MoveClass.INCREASING,
    }
    for n in range(2, 7):
        for state in all_states(n):
            before = gap_count(state)
            for k in range(2, n + 1):
                delta = gap_count(apply_flip(state, k)) - before
                assert classify_move(state, k) is signs[delta]


@pytest.mark.parametrize(
    "perm,expected",
    [
        ((2, 1, 3, 5, 4), (2,)),
        ((2, 1, 4, 3), ()),
        ((1, 2, 3, 4, 5), ()),
        ((2, 1), (2,)),
    ],
)
def test_gap_decreasing_moves_examples(perm, expected):
    assert gap_decreasing_moves(PancakeState(perm)) == expected


def test_gap_decreasing_moves_agrees_with_classification():
    for n in range(1, 7):
        for state in all_states(n):
            moves = gap_decreasing_moves(state)
            assert len(moves) <= 2
            derived = tuple(
                k
                for k in range(2, n + 1)
                if classify_move(state, k) is MoveClass.DECREASING
            )
            assert moves == derived


def test_is_locked():
    assert is_locked(S(2, 1, 4, 3))
    assert not is_locked(S(2, 1, 3, 5, 4))
    assert is_locked(S(1, 2, 3, 4))  # vacuously; callers check is_goal


def test_is_goal():
    assert is_goal(S(1, 2, 3, 4))
    assert not is_goal(S(2, 1, 4, 3))
    assert is_goal(S(1))


@pytest.mark.parametrize(
    "perm,expected",
    [
        ((2, 1, 4, 3, 5, 6, 7), (2, 1, 4, 3)),
        ((2, 1, 4, 3), (2, 1, 4, 3)),
        ((1, 2, 3), (1,)),
        ((1,), (1,)),
    ],
)
def test_normalize_suffix(perm, expected):
    assert normalize_suffix(PancakeState(perm)).perm == expected


def test_normalize_suffix_preserves_gap_count():
    for n in range(1, 7):
        for state in all_states(n):
            assert gap_count(normalize_suffix(state)) == gap_count(state)


def test_normalize_suffix_result_has_bottom_gap():
    # Unless the result is the goal, its bottom pancake is out of place.
    for n in range(2, 7):
        for state in all_states(n):
            reduced = normalize_suffix(state)
            if not is_goal(reduced):
                assert reduced.perm[-1] != reduced.n


def test_parse_round_trip():
    assert parse_permutation("2,1,4,3").perm == (2, 1, 4, 3)
    assert parse_permutation(" 2, 1 ,4,3 ").perm == (2, 1, 4, 3)
    for n in range(1, 6):
        for state in all_states(n):
            assert parse_permutation(format_permutation(state)) == state


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("2,1,x", "x"),
        ("0,1", "0"),
        ("1,1", "duplicate"),
        ("3,1", "exceeds"),
        ("", "empty"),
        ("2,,1", "''"),
    ],
)
def test_parse_rejections(text, fragment):
    with pytest.raises(ValueError, match=fragment):
        parse_permutation(text)
