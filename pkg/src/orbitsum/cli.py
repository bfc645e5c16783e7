"""Command line front end: classify, scan, oracle, witness.

Exit codes are part of the interface:

    0  Open / all checks consistent / oracle agrees / witness emitted
    2  usage error
    3  Singular (classify), or Open when a witness was requested
    4  oracle disagrees with the exact verdict, or a witness failed to verify
    5  oracle inconclusive
    1  scan found an inconsistent row
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations_with_replacement
from pathlib import Path

from . import criteria, oracle
from .rootsys import CASES, MultiplicityPartition, OrbitTuple, PartitionError, all_partitions

SCHEMA = 1
SCAN_MAX_M = 12
SCAN_MAX_K = 5

EXIT_OK = 0
EXIT_INCONSISTENT = 1
EXIT_USAGE = 2
EXIT_SINGULAR = 3
EXIT_DEFECT = 4
EXIT_INCONCLUSIVE = 5

CSV_COLUMNS = ["m", "k", "partitions", "classification", "sum_q", "bound",
               "exception", "open_general", "l2", "agree"]


class UsageError(Exception):
    pass


def _threads() -> int:
    value = os.environ.get("ORBITSUM_THREADS")
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            raise UsageError(f"ORBITSUM_THREADS must be an integer, got {value!r}")
    return os.cpu_count() or 1


def _parse_range(text: str, name: str) -> range:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return range(int(lo), int(hi) + 1)
        return range(int(text), int(text) + 1)
    except ValueError:
        raise UsageError(f"--{name} must be an integer or a range like 2..8, got {text!r}")


def _parse_tuple(args) -> OrbitTuple:
    if not args.parts:
        raise UsageError("at least one --parts is required")
    partitions = []
    for text in args.parts:
        try:
            parts = [int(x) for x in text.split(",")]
        except ValueError:
            raise UsageError(f"--parts must be comma separated integers, got {text!r}")
        try:
            partitions.append(MultiplicityPartition(parts, m=args.m))
        except PartitionError as exc:
            raise UsageError(str(exc))
    return OrbitTuple(partitions, args.case)


def _row(t: OrbitTuple) -> dict:
    verdict = criteria.su_classify(t)
    su_open = verdict.is_open
    open_general = bool(criteria.open_check_general(t))
    l2 = bool(criteria.l2_check(t))
    return {
        "m": t.m,
        "k": t.k,
        "partitions": " ".join(",".join(map(str, p.parts)) for p in t.partitions),
        "classification": verdict.classification,
        "sum_q": verdict.theorem1.sum_q,
        "bound": verdict.theorem1.bound,
        "exception": verdict.theorem1.exception,
        "open_general": open_general,
        "l2": l2,
        "agree": (t.k < 2 or open_general == su_open) and l2 == su_open,
    }


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _table(rows: list[dict]) -> str:
    if not rows:
        return ""
    cols = list(rows[0])
    cells = [[str(r[c]) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def _json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text, encoding="utf-8")


def cmd_classify(args) -> int:
    t = _parse_tuple(args)
    verdict = criteria.dichotomy_classify(t)
    if args.format == "json":
        payload = {"schema": SCHEMA, **t.to_json(), **verdict.to_json()}
        _emit(_json(payload), args.output)
    elif args.format == "csv":
        _emit(_csv([_row(t)]), args.output)
    else:
        _emit(_table([_row(t)]), args.output)
    return EXIT_OK if verdict.is_open else EXIT_SINGULAR


def scan_tuples(ms: range, ks: range) -> list[OrbitTuple]:
    return [OrbitTuple(tup)
            for m in ms for k in ks
            for tup in combinations_with_replacement(all_partitions(m), k)]


def cmd_scan(args) -> int:
    ms = _parse_range(args.m, "m")
    ks = _parse_range(args.k, "k")
    if not ms or not ks or ms.start < 2 or ms.stop - 1 > SCAN_MAX_M \
            or ks.start < 1 or ks.stop - 1 > SCAN_MAX_K:
        raise UsageError(f"scan ranges must satisfy 2 <= m <= {SCAN_MAX_M} "
                         f"and 1 <= k <= {SCAN_MAX_K}")
    tuples = scan_tuples(ms, ks)
    with ThreadPoolExecutor(_threads()) as pool:
        rows = list(pool.map(_row, tuples))
    ok = all(r["agree"] for r in rows)
    if args.format == "json":
        _emit(_json({"schema": SCHEMA, "rows": rows, "count": len(rows), "all_agree": ok}),
              args.output)
    elif args.format == "csv":
        _emit(_csv(rows), args.output)
    else:
        _emit(_table(rows), args.output)
    return EXIT_OK if ok else EXIT_INCONSISTENT


def cmd_oracle(args) -> int:
    t = _parse_tuple(args)
    if t.m > oracle.ORACLE_MAX_M:
        raise UsageError(f"the numeric oracle is limited to m <= {oracle.ORACLE_MAX_M}")
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    result = oracle.numeric_classify(t, args.samples, args.tol, args.seed, workers=_threads())
    exact = criteria.su_classify(t)
    if result.outcome == oracle.INCONCLUSIVE:
        agree, code = None, EXIT_INCONCLUSIVE
    else:
        agree = (result.outcome == oracle.OPEN_CERTIFICATE) == exact.is_open
        code = EXIT_OK if agree else EXIT_DEFECT
    payload = {"schema": SCHEMA, "m": t.m, "oracle": result.to_json(),
               "classification": exact.classification, "agree": agree}
    if args.format == "json":
        _emit(_json(payload), args.output)
    else:
        row = {"m": t.m, "case": t.case, "outcome": result.outcome,
               "samples": result.samples, "classification": exact.classification,
               "agree": agree}
        _emit(_csv_generic([row]) if args.format == "csv" else _table([row]), args.output)
    return code


def _csv_generic(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def cmd_witness(args) -> int:
    t = _parse_tuple(args)
    w = criteria.singular_witness(t)
    if w is None:
        _emit("none\n", args.output)
        return EXIT_SINGULAR if criteria.su_classify(t).is_open else EXIT_DEFECT
    if not criteria.verify_witness(w):
        print("internal error: constructed witness failed verification", file=sys.stderr)
        return EXIT_DEFECT
    payload = {"schema": SCHEMA, "m": t.m, "verified": True, "witness": w.to_json()}
    _emit(_json(payload), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitsum",
        description="Open/singular classification of sums of adjoint orbits in su(m) "
                    "and products of conjugacy classes in SU(m).")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, m_type=int):
        p.add_argument("--m", type=m_type, required=True)
        p.add_argument("--case", choices=CASES, default="algebra")
        p.add_argument("--format", choices=["json", "csv", "table"], default="json")
        p.add_argument("--output", type=Path, default=None)

    p = sub.add_parser("classify", help="classify one tuple of orbits")
    common(p)
    p.add_argument("--parts", action="append", help="multiplicities, e.g. 2,1,1 (repeatable)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("scan", help="check every tuple over ranges of m and k")
    common(p, m_type=str)
    p.add_argument("--k", type=str, required=True)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("oracle", help="run the randomised numerical check")
    common(p)
    p.add_argument("--parts", action="append")
    p.add_argument("--samples", type=int, default=oracle.DEFAULT_SAMPLES)
    p.add_argument("--tol", type=float, default=oracle.DEFAULT_TOL)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("witness", help="emit a checked singularity witness")
    common(p)
    p.add_argument("--parts", action="append")
    p.set_defaults(func=cmd_witness)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"orbitsum {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
