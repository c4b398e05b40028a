"""Command-line surface: classify, solve, exit-distance, verify, census.

Exit codes: 0 all good, 1 verification found violations, 2 usage or
capacity errors.  JSON is the canonical machine format and is emitted with
sorted keys; verify/census JSON deliberately omits wall-clock time so the
same run is byte-identical regardless of worker count.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import verify as verify_mod
from .core import (
    MoveClass,
    classify_move,
    format_permutation,
    gap_count,
    is_goal,
    is_locked,
    normalize_suffix,
    parse_permutation,
)
from .solver import CapacityError, greedy_solve, optimal_solve
from .topology import classify_state, escape_plan, exit_path, strips
from .verify import CLASS_ORDER, VerificationReport

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_USAGE = 2


# ---------------------------------------------------------------------------
# Output encoding.
# ---------------------------------------------------------------------------


def _encode_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return ",".join(_encode_cell(v) for v in value)
    if isinstance(value, dict):  # strip records
        return f"{value['start']}-{value['end']}:{value['direction']}"
    return str(value)


def _emit_record(record: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(record, indent=2, sort_keys=True))
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(record.keys())
        writer.writerow(_encode_cell(v) for v in record.values())
        sys.stdout.write(buf.getvalue())
    else:
        for key, value in record.items():
            if isinstance(value, list) and value and isinstance(value[0], dict):
                print(f"{key}: " + "; ".join(_encode_cell(v) for v in value))
            else:
                print(f"{key}: {_encode_cell(value)}")


def _report_record(report: VerificationReport, kind: str) -> dict:
    hist_keys = sorted(set(report.exit_distance_histogram) | {0, 1, 2})
    record = {
        "kind": kind,
        "n": report.n,
        "states_checked": report.states_checked,
        "class_census": {
            cls.value: report.class_census.get(cls, 0) for cls in CLASS_ORDER
        },
        "exit_distance_histogram": {
            str(d): report.exit_distance_histogram.get(d, 0) for d in hist_keys
        },
        "violations_total": report.violations_total,
        "violations": [
            {"check": v.check, "state": v.state, "details": v.details}
            for v in report.violations
        ],
    }
    if kind == "verify":
        record["checks"] = list(report.checks)
        record["violation_counts"] = dict(report.violation_counts)
    return record


def _census_rows(record: dict) -> list[list]:
    rows = [["n", "class", "count"]]
    for cls in CLASS_ORDER:
        rows.append([record["n"], cls.value, record["class_census"][cls.value]])
    return rows


def _histogram_rows(record: dict) -> list[list]:
    rows = [["n", "exit_distance", "count"]]
    for d in sorted(record["exit_distance_histogram"], key=int):
        rows.append([record["n"], d, record["exit_distance_histogram"][d]])
    return rows


def _violation_rows(record: dict) -> list[list]:
    rows = [["check", "state", "details"]]
    for v in record["violations"]:
        rows.append([v["check"], v["state"], v["details"]])
    return rows


def _write_csv(rows: list[list], path: str | None) -> None:
    if path is None:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerows(rows)
    else:
        with open(path, "w", newline="") as handle:
            csv.writer(handle, lineterminator="\n").writerows(rows)


def _emit_report(report: VerificationReport, kind: str, fmt: str, out: str | None) -> None:
    record = _report_record(report, kind)
    if fmt == "json":
        print(json.dumps(record, indent=2, sort_keys=True))
    elif fmt == "csv":
        if out is None:
            _write_csv(_census_rows(record), None)
            print()
            _write_csv(_histogram_rows(record), None)
            if record["violations"]:
                print()
                _write_csv(_violation_rows(record), None)
        else:
            _write_csv(_census_rows(record), f"{out}.census.csv")
            _write_csv(_histogram_rows(record), f"{out}.histogram.csv")
            written = [f"{out}.census.csv", f"{out}.histogram.csv"]
            if record["violations"]:
                _write_csv(_violation_rows(record), f"{out}.violations.csv")
                written.append(f"{out}.violations.csv")
            for path in written:
                print(f"wrote {path}")
    else:
        print(f"kind: {kind}")
        print(f"n: {record['n']}")
        print(f"states_checked: {record['states_checked']}")
        print("class_census:")
        for cls in CLASS_ORDER:
            print(f"  {cls.value}: {record['class_census'][cls.value]}")
        print("exit_distance_histogram:")
        for d in sorted(record["exit_distance_histogram"], key=int):
            print(f"  {d}: {record['exit_distance_histogram'][d]}")
        if kind == "verify":
            print(f"checks_run: {len(record['checks'])}")
        print(f"violations_total: {record['violations_total']}")
        for v in record["violations"][:20]:
            print(f"  VIOLATION {v['check']} state={v['state']}: {v['details']}")
        if record["violations_total"] > 20:
            print(f"  ... ({record['violations_total']} total)")
        print(f"elapsed_seconds: {report.elapsed:.3f}")


# ---------------------------------------------------------------------------
# Command handlers.
# ---------------------------------------------------------------------------


def _cmd_classify(args) -> int:
    state = parse_permutation(args.perm)
    normalized = normalize_suffix(state)
    buckets = {MoveClass.DECREASING: [], MoveClass.NEUTRAL: [], MoveClass.INCREASING: []}
    for k in range(2, state.n + 1):
        buckets[classify_move(state, k)].append(k)
    record = {
        "perm": format_permutation(state),
        "n": state.n,
        "gap_count": gap_count(state),
        "goal": is_goal(state),
        "locked": is_locked(state),
        "strips": [
            {"start": s.start, "end": s.end, "size": s.size, "direction": s.direction.value}
            for s in strips(state)
        ],
        "normalized_perm": format_permutation(normalized),
        "state_class": classify_state(normalized).value,
        "decreasing_moves": buckets[MoveClass.DECREASING],
        "neutral_moves": buckets[MoveClass.NEUTRAL],
        "increasing_moves": buckets[MoveClass.INCREASING],
    }
    _emit_record(record, args.format)
    return EXIT_OK


def _cmd_solve(args) -> int:
    state = parse_permutation(args.perm)
    result = optimal_solve(state) if args.mode == "optimal" else greedy_solve(state)
    record = {
        "perm": format_permutation(state),
        "n": state.n,
        "mode": args.mode,
        "moves": list(result.moves),
        "length": result.length,
        "initial_gap_count": result.initial_gap_count,
    }
    if args.mode == "optimal":
        record["admissibility_margin"] = result.length - result.initial_gap_count
    _emit_record(record, args.format)
    return EXIT_OK


def _cmd_exit_distance(args) -> int:
    state = parse_permutation(args.perm)
    if is_goal(state):
        raise ValueError("the goal state is not on any plateau; no exit distance")
    path = exit_path(state)
    normalized = normalize_suffix(state)
    plan = escape_plan(normalized)
    record = {
        "perm": format_permutation(state),
        "n": state.n,
        "gap_count": gap_count(state),
        "exit_distance": len(path),
        "plateau_path": list(path),
        "normalized_perm": format_permutation(normalized),
        "plan_moves_to_exit": list(plan.moves_to_exit),
        "plan_closing_move": plan.closing_move,
        "plan_length": plan.length,
    }
    _emit_record(record, args.format)
    return EXIT_OK


def _require_long_flag(n: int, max_n: int, long_run: bool) -> None:
    if n >= 9 and n <= max_n and not long_run:
        raise ValueError(f"n = {n} is a long run; pass --long to confirm")


def _cmd_verify(args) -> int:
    _require_long_flag(args.n, verify_mod.VERIFY_MAX_N, args.long)
    report = verify_mod.verify_theorems(args.n, jobs=args.jobs)
    _emit_report(report, "verify", args.format, args.out)
    return EXIT_OK if report.passed else EXIT_VIOLATIONS


def _cmd_census(args) -> int:
    _require_long_flag(args.n, verify_mod.ENUM_MAX_N, args.long)
    report = verify_mod.census(args.n, jobs=args.jobs)
    _emit_report(report, "census", args.format, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser.
# ---------------------------------------------------------------------------


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("human", "json", "csv"), default="human",
        help="output format (default: human)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gap-topology",
        description="Pancake-puzzle gap heuristic: analysis, solving, and "
        "exhaustive verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="gap count, strips, and taxonomy of a state")
    p.add_argument("perm", help="comma-separated permutation, e.g. 2,1,4,3")
    _add_format(p)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("solve", help="solve a state optimally or greedily")
    p.add_argument("perm")
    p.add_argument("--mode", choices=("optimal", "greedy"), default="greedy")
    _add_format(p)
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("exit-distance", help="plateau exit distance and escape plan")
    p.add_argument("perm")
    _add_format(p)
    p.set_defaults(handler=_cmd_exit_distance)

    for name, handler, blurb in (
        ("verify", _cmd_verify, "machine-check every claim over all states of size n"),
        ("census", _cmd_census, "class census and exit-distance histogram only"),
    ):
        p = sub.add_parser(name, help=blurb)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                       help="worker processes (default: all cores)")
        p.add_argument("--long", action="store_true",
                       help="allow long-running sizes (n >= 9)")
        p.add_argument("--out", default=None,
                       help="base path for csv output files")
        _add_format(p)
        p.set_defaults(handler=handler)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors, 0 for --help
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
