"""Exhaustive machine-checking of the gap-topology claims.

For every permutation of a given size this module checks the whole battery:
the goal/zero-gaps biconditional, the two-decreasing-moves cap, existence
and constructive validity of gap-neutral moves in locked states, the
per-class exit distances (0/1/1/2), the global exit-distance bound of 2,
escape-plan validity and agreement with the searched exit distance, optimal
cost 3 for the easy FG state, the no-single-flip-exit property of hard FG
states, and admissibility of the gap count against the optimal oracle.

Check failures are data, not exceptions: they land in the report's
violation list (detail records capped per check, exact totals kept).

The permutation space is sharded by first element so shards can run in
worker processes; shard results merge in fixed order, which makes reports
byte-for-byte reproducible at any worker count.
"""

from __future__ import annotations

import itertools
import multiprocessing
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import solver
from .core import (
    PancakeState,
    _decreasing_moves,
    _flip,
    _gap_count,
    _gap_delta,
)
from .solver import CapacityError
from .topology import (
    PlateauExitError,
    StateClass,
    _classify,
    _escape_plan,
    _find_gap_neutral,
    _plateau_search,
    _strip_bounds,
)

ENUM_MAX_N = 12
VERIFY_MAX_N = 10
MAX_VIOLATION_DETAILS = 100

CLASS_ORDER = (
    StateClass.GOAL,
    StateClass.EXIT_STATE,
    StateClass.LOCKED_NON_FG,
    StateClass.EASY_FG,
    StateClass.HARD_FG,
)

_EXPECTED_EXIT_DISTANCE = {
    StateClass.EXIT_STATE: 0,
    StateClass.LOCKED_NON_FG: 1,
    StateClass.EASY_FG: 1,
    StateClass.HARD_FG: 2,
}

_BASE_CHECKS = (
    "lemma1",
    "max-two-decreasing",
    "decreasing-set",
    "move-class-equivalence",
    "unit-delta",
    "theorem2-exists",
    "theorem2-constructive",
    "exit-distance-bound",
    "exit-distance-class",
    "plan-matches-exit-distance",
    "escape-plan-valid",
    "easy-fg-form",
    "easy-fg-unique",
    "hard-fg-plan-shape",
    "hard-fg-single-flip-exit",
    "classification-partition",
    "plateau-exit-error",
    "battery-exception",
)


@dataclass(frozen=True, slots=True)
class Violation:
    check: str
    state: str
    details: str


@dataclass
class VerificationReport:
    n: int
    states_checked: int
    class_census: dict[StateClass, int]
    exit_distance_histogram: dict[int, int]
    checks: tuple[str, ...]
    violations: list[Violation]
    violation_counts: dict[str, int]
    elapsed: float

    @property
    def violations_total(self) -> int:
        return sum(self.violation_counts.values())

    @property
    def passed(self) -> bool:
        return self.violations_total == 0


def enumerate_states(n: int, normalized_only: bool = False):
    """Yield every n-pancake state in lexicographic order.

    With ``normalized_only`` the states whose bottom pancake is already in
    place are skipped; n!*(n-1)/n states remain.
    """
    if n < 1 or n > ENUM_MAX_N:
        raise CapacityError(f"enumeration supports 1 <= n <= {ENUM_MAX_N}, got {n}")
    for perm in itertools.permutations(range(1, n + 1)):
        if normalized_only and perm[-1] == n:
            continue
        yield PancakeState(perm)


def _perm_text(perm: tuple[int, ...]) -> str:
    return ",".join(str(v) for v in perm)


def _check_shard(
    n: int,
    first: int,
    mode: str,
    table: dict[bytes, int] | None,
    easy_oracle_limit: int | None,
):
    """Run the battery over all permutations starting with ``first``.

    Returns (states_checked, census, histogram, violation_counts, details);
    details carry at most MAX_VIOLATION_DETAILS records per check.
    """
    census: Counter = Counter()
    hist: Counter = Counter()
    counts: Counter = Counter()
    details: list[tuple[str, str, str]] = []
    checked = 0

    def record(check: str, perm: tuple[int, ...], message: str) -> None:
        counts[check] += 1
        if counts[check] <= MAX_VIOLATION_DETAILS:
            details.append((check, _perm_text(perm), message))

    goal = tuple(range(1, n + 1))
    others = [v for v in range(1, n + 1) if v != first]
    flip_range = range(2, n + 1)
    census_only = mode == "census"
    gapf, deltaf, decf, flipf = _gap_count, _gap_delta, _decreasing_moves, _flip

    for rest in itertools.permutations(others):
        perm = (first,) + rest

        if census_only:
            if perm[-1] == n:
                continue
            checked += 1
            census[_classify(perm)] += 1
            hist[_plateau_search(perm)[0]] += 1
            continue

        gaps = gapf(perm)
        at_goal = perm == goal
        if at_goal != (gaps == 0):
            record("lemma1", perm, f"is_goal={at_goal} but gap_count={gaps}")

        dec = decf(perm)
        if len(dec) > 2:
            record("max-two-decreasing", perm, f"{len(dec)} decreasing moves: {dec}")

        scan_dec = []
        has_neutral = False
        for k in flip_range:
            delta = gapf(flipf(perm, k)) - gaps
            if delta < -1 or delta > 1:
                record("unit-delta", perm, f"M_{k} changed gap count by {delta}")
            if delta != deltaf(perm, k):
                record(
                    "move-class-equivalence",
                    perm,
                    f"M_{k}: recomputed delta {delta} != local-pair {deltaf(perm, k)}",
                )
            if delta == -1:
                scan_dec.append(k)
            elif delta == 0:
                has_neutral = True
        if tuple(scan_dec) != dec:
            record("decreasing-set", perm, f"scan found {scan_dec}, op returned {dec}")

        if table is not None:
            optimal = table[bytes(perm)]
            if gaps > optimal:
                record("admissibility", perm, f"gap_count {gaps} > h* {optimal}")
            if not at_goal and not dec and optimal < gaps + 1:
                record(
                    "locked-lower-bound",
                    perm,
                    f"locked state with h* {optimal} < gap_count+1 {gaps + 1}",
                )

        if not at_goal and not dec:
            if not has_neutral:
                record("theorem2-exists", perm, "locked state with no gap-neutral move")
            try:
                m = _find_gap_neutral(perm)
            except Exception as exc:  # finder must not fail on locked states
                record("theorem2-constructive", perm, f"finder raised: {exc}")
            else:
                if m < 2 or m > n or deltaf(perm, m) != 0:
                    record("theorem2-constructive", perm, f"M_{m} is not gap neutral")

        if perm[-1] == n:
            continue
        checked += 1
        try:
            cls = _classify(perm)
            census[cls] += 1

            dist, _ = _plateau_search(perm)
            hist[dist] += 1
            if dist > 2:
                record("exit-distance-bound", perm, f"exit distance {dist} > 2")
            if dist != _EXPECTED_EXIT_DISTANCE[cls]:
                record(
                    "exit-distance-class",
                    perm,
                    f"{cls.value} state has exit distance {dist}",
                )

            moves, closing = _escape_plan(perm)
            if len(moves) != dist:
                record(
                    "plan-matches-exit-distance",
                    perm,
                    f"plan length {len(moves)} != searched exit distance {dist}",
                )
            cur = perm
            plan_ok = True
            for mv in moves:
                if deltaf(cur, mv) != 0:
                    record("escape-plan-valid", perm, f"plan move M_{mv} not neutral")
                    plan_ok = False
                    break
                cur = flipf(cur, mv)
            if plan_ok:
                if deltaf(cur, closing) != -1:
                    record(
                        "escape-plan-valid", perm, f"closing M_{closing} not decreasing"
                    )
                elif gapf(flipf(cur, closing)) != gaps - 1:
                    record("escape-plan-valid", perm, "plan total delta is not -1")

            if cls is StateClass.EASY_FG:
                form = tuple(range(n - 2, 0, -1)) + (n, n - 1)
                if perm != form:
                    record("easy-fg-form", perm, f"expected {_perm_text(form)}")
                if easy_oracle_limit is not None:
                    length = solver.optimal_solve(
                        PancakeState(perm), limit=easy_oracle_limit
                    ).length
                    if length != 3:
                        record("easy-fg-optimal", perm, f"h* = {length}, expected 3")

            if cls is StateClass.HARD_FG:
                start, end = _strip_bounds(perm)[-1]
                ell = end - start + 1
                if moves != (n, ell) or closing != n:
                    record(
                        "hard-fg-plan-shape",
                        perm,
                        f"plan {moves}+M_{closing}, expected ({n}, {ell})+M_{n}",
                    )
                for k in flip_range:
                    child = flipf(perm, k)
                    if gapf(child) == gaps and decf(child):
                        record(
                            "hard-fg-single-flip-exit",
                            perm,
                            f"M_{k} reaches an exit in one move",
                        )
        except PlateauExitError as exc:
            record("plateau-exit-error", perm, str(exc))
        except Exception as exc:  # keep sweeping; the report carries the failure
            record("battery-exception", perm, f"{type(exc).__name__}: {exc}")

    return checked, census, hist, counts, details


# Shard configuration for worker processes, inherited through fork.
_WORKER_CONFIG: dict | None = None


def _worker_shard(first: int):
    cfg = _WORKER_CONFIG
    return _check_shard(cfg["n"], first, cfg["mode"], cfg["table"], cfg["easy_limit"])


def _run_shards(
    n: int,
    mode: str,
    table: dict[bytes, int] | None,
    easy_limit: int | None,
    jobs: int,
):
    firsts = list(range(1, n + 1))
    if jobs <= 1:
        return [_check_shard(n, first, mode, table, easy_limit) for first in firsts]
    global _WORKER_CONFIG
    _WORKER_CONFIG = {"n": n, "mode": mode, "table": table, "easy_limit": easy_limit}
    try:
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=min(jobs, n), mp_context=ctx) as pool:
            return list(pool.map(_worker_shard, firsts))
    finally:
        _WORKER_CONFIG = None


def _merge_shards(n, shard_results, checks, elapsed_start) -> VerificationReport:
    checked = 0
    census: Counter = Counter()
    hist: Counter = Counter()
    counts: Counter = Counter()
    merged: list[Violation] = []
    kept: Counter = Counter()
    for shard_checked, shard_census, shard_hist, shard_counts, shard_details in shard_results:
        checked += shard_checked
        census.update(shard_census)
        hist.update(shard_hist)
        counts.update(shard_counts)
        for check, state, message in shard_details:
            if kept[check] < MAX_VIOLATION_DETAILS:
                kept[check] += 1
                merged.append(Violation(check, state, message))
    return VerificationReport(
        n=n,
        states_checked=checked,
        class_census={cls: census.get(cls, 0) for cls in CLASS_ORDER},
        exit_distance_histogram={d: hist[d] for d in sorted(hist)},
        checks=checks,
        violations=merged,
        violation_counts={k: counts[k] for k in sorted(counts)},
        elapsed=time.perf_counter() - elapsed_start,
    )


def verify_theorems(
    n: int, *, jobs: int = 1, oracle_limit: int | None = None
) -> VerificationReport:
    """Run the whole check battery over every state of size n."""
    if n < 2 or n > VERIFY_MAX_N:
        raise CapacityError(f"verification supports 2 <= n <= {VERIFY_MAX_N}, got {n}")
    start = time.perf_counter()
    limit = solver.oracle_limit() if oracle_limit is None else oracle_limit
    use_table = n <= min(solver.TABLE_MAX_N, limit)
    table = solver.distance_table(n) if use_table else None
    easy_limit = limit if n <= limit else None

    checks = list(_BASE_CHECKS)
    if use_table:
        checks += ["admissibility", "locked-lower-bound"]
    if easy_limit is not None:
        checks.append("easy-fg-optimal")

    shard_results = _run_shards(n, "verify", table, easy_limit, jobs)
    report = _merge_shards(n, shard_results, tuple(checks), start)

    # Structural checks over the merged census.
    expected_easy = 1 if n >= 4 else 0
    easy = report.class_census[StateClass.EASY_FG]
    if easy != expected_easy:
        report.violation_counts["easy-fg-unique"] = (
            report.violation_counts.get("easy-fg-unique", 0) + 1
        )
        report.violations.append(
            Violation("easy-fg-unique", "-", f"{easy} easy FG states, expected {expected_easy}")
        )
    if sum(report.class_census.values()) != report.states_checked:
        report.violation_counts["classification-partition"] = (
            report.violation_counts.get("classification-partition", 0) + 1
        )
        report.violations.append(
            Violation(
                "classification-partition",
                "-",
                f"census sums to {sum(report.class_census.values())}, "
                f"checked {report.states_checked}",
            )
        )
    report.violation_counts = {
        k: report.violation_counts[k] for k in sorted(report.violation_counts)
    }
    report.elapsed = time.perf_counter() - start
    return report


def census(n: int, *, jobs: int = 1) -> VerificationReport:
    """Class census and exit-distance histogram only; no theorem checks."""
    if n < 2 or n > ENUM_MAX_N:
        raise CapacityError(f"census supports 2 <= n <= {ENUM_MAX_N}, got {n}")
    start = time.perf_counter()
    shard_results = _run_shards(n, "census", None, None, jobs)
    return _merge_shards(n, shard_results, (), start)
