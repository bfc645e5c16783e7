"""Acceptance gate. One test per criterion; each prints a PASS/FAIL line and
the lines are repeated in the terminal summary (see conftest.py)."""

import subprocess
import sys
import time
from fractions import Fraction
from itertools import combinations_with_replacement

from orbitsum.criteria import (
    OPEN,
    SINGULAR,
    brute_force_crossing_range,
    crossing_bound,
    l2_check,
    max_crossing,
    min_crossing,
    open_check_general,
    singular_witness,
    su_classify,
    verify_witness,
)
from orbitsum.oracle import (
    GAP_RATIO,
    OPEN_CERTIFICATE,
    SINGULAR_EVIDENCE,
    build_representative,
    centralizer_basis,
    numeric_classify,
)
from orbitsum.rootsys import (
    CASES,
    OrbitTuple,
    SubsystemShape,
    all_partitions,
    enumerate_corank_one_shapes,
    enumerate_proper_shapes,
)

RESULTS: list[str] = []
SEED = 20240601


def report(number, title, ok, elapsed, limit, detail=""):
    ok = ok and elapsed < limit
    line = (f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: "
            f"{elapsed:.2f}s (limit {limit}s){' ' + detail if detail else ''}")
    RESULTS.append(line)
    print(line)
    return ok


def all_tuples(ms, ks):
    for m in ms:
        for k in ks:
            for tup in combinations_with_replacement(all_partitions(m), k):
                yield OrbitTuple(tup)


def test_criterion_1_regression_set():
    start = time.perf_counter()
    cases = [
        ([(2, 2), (2, 2)], SINGULAR),
        ([(2, 2), (2, 1, 1)], OPEN),
        ([(2, 1), (2, 1)], SINGULAR),
        ([(1, 1), (1, 1)], OPEN),
    ]
    cases += [([(r + 1, r + 1), (r + 1, r + 1)], SINGULAR) for r in (1, 2, 3)]
    cases += [([p], SINGULAR) for m in range(1, 9) for p in all_partitions(m)]
    wrong = [(parts, expected) for parts, expected in cases
             if su_classify(OrbitTuple(parts)).classification != expected]
    elapsed = time.perf_counter() - start
    assert report(1, "Theorem-1 regression set", not wrong, elapsed, 1, f"{len(cases)} cases"), wrong


def test_criterion_2_criterion_equivalence_sweep():
    start = time.perf_counter()
    failures = []
    count = 0
    for t in all_tuples(range(2, 9), range(2, 5)):
        count += 1
        is_open = su_classify(t).is_open
        if bool(open_check_general(t)) != is_open or bool(l2_check(t)) != is_open:
            failures.append(t)
    elapsed = time.perf_counter() - start
    assert report(2, "criterion equivalence sweep", not failures, elapsed, 300,
                  f"{count} tuples"), failures[:5]


def test_criterion_3_dp_vs_brute_force():
    start = time.perf_counter()
    failures = []
    count = 0
    for m in range(1, 8):
        shapes = [SubsystemShape((m,))] + (enumerate_proper_shapes(m) if m > 1 else [])
        for p in all_partitions(m):
            for s in shapes:
                count += 1
                lo, hi = brute_force_crossing_range(p, s)
                if max_crossing(p, s).value != hi or min_crossing(p, s) != lo:
                    failures.append((p, s))
    elapsed = time.perf_counter() - start
    assert report(3, "DP vs brute force", not failures, elapsed, 120, f"{count} pairs"), failures


def test_criterion_4_crossing_bound():
    start = time.perf_counter()
    failures = []
    count = 0
    for m in range(2, 11):
        for p in all_partitions(m):
            equal_classes = len(set(p.parts)) == 1
            for s in enumerate_corank_one_shapes(m):
                count += 1
                c = s.blocks[1]
                bound = Fraction(p.largest, m) * 2 * c * (m - c)
                value = max_crossing(p, s).value
                # per-class share of the small block is c / (number of classes)
                attained = equal_classes and c % len(p.parts) == 0
                info = crossing_bound(p, s)
                if (value > bound or (value == bound) != attained
                        or info.bound != bound or info.equality_possible != attained):
                    failures.append((p, s, value, bound))
    elapsed = time.perf_counter() - start
    assert report(4, "equivalence-class crossing bound", not failures, elapsed, 60,
                  f"{count} pairs"), failures


def test_criterion_5_witness_soundness():
    start = time.perf_counter()
    failures = []
    count = 0
    for t in all_tuples(range(2, 9), range(1, 5)):
        count += 1
        w = singular_witness(t)
        if su_classify(t).is_open:
            if w is not None:
                failures.append(t)
        elif w is None or not verify_witness(w):
            failures.append(t)
    elapsed = time.perf_counter() - start
    assert report(5, "witness soundness", not failures, elapsed, 120, f"{count} tuples"), failures[:5]


def test_criterion_6_numeric_agreement():
    start = time.perf_counter()
    failures = []
    count = 0
    for case in CASES:
        for m in range(2, 6):
            for k in (2, 3):
                for tup in combinations_with_replacement(all_partitions(m), k):
                    t = OrbitTuple(tup, case)
                    count += 1
                    v = numeric_classify(t, samples=32, tol=1e-8, seed=SEED)
                    expected = OPEN_CERTIFICATE if su_classify(t).is_open else SINGULAR_EVIDENCE
                    if v.outcome != expected:
                        failures.append((t, v.outcome))
    for m in range(1, 9):
        for p in all_partitions(m):
            for case in CASES:
                dim = centralizer_basis(build_representative(p, case)).dim
                if dim != sum(w * w for w in p.parts) - 1:
                    failures.append((p, case, dim))
    elapsed = time.perf_counter() - start
    assert report(6, "numeric agreement", not failures, elapsed, 600,
                  f"{count} tuples"), failures[:5]


def test_criterion_7_exception_family_depth():
    start = time.perf_counter()
    singular = numeric_classify(OrbitTuple([(2, 2), (2, 2)]), samples=100, seed=SEED,
                                stop_early=False)
    open_ = numeric_classify(OrbitTuple([(2, 2), (2, 1, 1)]), samples=100, seed=SEED,
                             stop_early=False)
    ok_singular = (len(singular.dims) == 100 and all(d >= 1 for d in singular.dims)
                   and all(r >= GAP_RATIO for r in singular.ratios))
    zeros = sum(1 for d in open_.dims if d == 0)
    elapsed = time.perf_counter() - start
    assert report(7, "exception-family oracle depth", ok_singular and zeros >= 99, elapsed, 60,
                  f"singular dims {singular.histogram}, open zeros {zeros}/100")


def test_criterion_8_determinism():
    start = time.perf_counter()
    argv = ["oracle", "--m", "4", "--parts", "2,2", "--parts", "2,2",
            "--samples", "32", "--seed", "7"]
    outputs = []
    for _ in range(2):
        proc = subprocess.run([sys.executable, "-m", "orbitsum", *argv], capture_output=True)
        outputs.append((proc.returncode, proc.stdout))
    elapsed = time.perf_counter() - start
    ok = outputs[0] == outputs[1] and outputs[0][0] == 0
    assert report(8, "oracle determinism", ok, elapsed, 60)
