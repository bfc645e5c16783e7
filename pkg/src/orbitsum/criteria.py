"""Exact decision procedures for sums of orbits in su(m) and SU(m).

The central quantity is how many roots of an annihilating subsystem Phi_X can
cross a subsystem Psi when the two are put in the worst (or best) relative
position under the Weyl group. For type A this is a question about
arrangements: if ``a[s][j]`` elements of eigenvalue class ``j`` land in block
``s`` of Psi, the number of roots of Phi_X that are *not* in Psi is::

    phi_size(p) - sum_{s,j} a[s][j] * (a[s][j] - 1)

so the Weyl-orbit maximum and minimum are integer optimisations of a convex
separable function over a transportation polytope (row sums = block sizes,
column sums = multiplicities). Everything in this module is integer or
``Fraction`` arithmetic; the strict inequalities are sharp on the exceptional
family and must not go through floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterator, Sequence

import numpy as np

from .rootsys import (
    DimensionMismatch,
    MultiplicityPartition,
    OrbitTuple,
    PartitionError,
    SubsystemShape,
    corank,
    enumerate_corank_one_shapes,
    enumerate_proper_shapes,
    n_psi_size,
    phi_size,
)

OPEN = "Open"
SINGULAR = "Singular"
IN_L2 = "InL2"
SINGULAR_TO_HAAR = "SingularToHaar"

LINEAR = "linear"
PARITY = "parity"
SEARCH = "search"

BRUTE_FORCE_MAX_M = 8
SEARCH_MAX_M = 5


# -- transportation polytope optimisation ----------------------------------

def _pair_cost(row: Sequence[int]) -> int:
    return sum(x * (x - 1) for x in row)


def _distributions(total: int, caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Vectors ``x`` with ``0 <= x[j] <= caps[j]`` and ``sum(x) == total``."""
    if not caps:
        if total == 0:
            yield ()
        return
    head, rest = caps[0], caps[1:]
    room = sum(rest)
    for x in range(min(head, total), max(0, total - room) - 1, -1):
        for tail in _distributions(total - x, rest):
            yield (x,) + tail


def _spread_bound(total: int, caps: Sequence[int]) -> int:
    # Smallest pair cost of one row: spread as evenly as possible over the
    # nonzero columns, ignoring the caps.
    nz = sum(1 for c in caps if c > 0)
    if total == 0 or nz == 0:
        return 0
    q, r = divmod(total, nz)
    return r * (q + 1) * q + (nz - r) * q * (q - 1)


def _pack_bound(total: int, caps: Sequence[int]) -> int:
    # Largest pair cost of one row: fill the biggest columns first.
    out = 0
    for c in sorted(caps, reverse=True):
        x = min(c, total)
        out += x * (x - 1)
        total -= x
        if total == 0:
            break
    return out


def optimize_arrangement(rows: Sequence[int], cols: Sequence[int],
                         maximize: bool = False) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Optimise ``sum a[s][j] * (a[s][j] - 1)`` over integer matrices with the
    given row and column sums.

    Depth-first over rows; subproblems are memoised on the sorted vector of
    remaining column capacities, and candidate rows are pruned with a
    row-wise relaxation bound. Returns ``(objective, matrix)``.
    """
    rows = tuple(rows)
    cols = tuple(cols)
    if sum(rows) != sum(cols):
        raise DimensionMismatch(f"row sums {rows} and column sums {cols} differ")
    better = (lambda a, b: a > b) if maximize else (lambda a, b: a < b)
    relax = _pack_bound if maximize else _spread_bound
    memo: dict[tuple[int, tuple[int, ...]], tuple[int, tuple[tuple[int, ...], ...]]] = {}

    def solve(i: int, caps: tuple[int, ...]):
        if i == len(rows):
            return 0, ()
        key = (i, caps)
        if key in memo:
            return memo[key]
        best_val: int | None = None
        best_alloc: tuple[tuple[int, ...], ...] = ()
        for x in _distributions(rows[i], caps):
            cost = _pair_cost(x)
            rem = [c - v for c, v in zip(caps, x)]
            if best_val is not None:
                optimistic = cost + sum(relax(t, rem) for t in rows[i + 1:])
                if not better(optimistic, best_val):
                    continue
            order = sorted(range(len(rem)), key=lambda j: -rem[j])
            sub_val, sub_alloc = solve(i + 1, tuple(rem[j] for j in order))
            total = cost + sub_val
            if best_val is None or better(total, best_val):
                unpermuted = []
                for srow in sub_alloc:
                    row = [0] * len(rem)
                    for pos, j in enumerate(order):
                        row[j] = srow[pos]
                    unpermuted.append(tuple(row))
                best_val, best_alloc = total, (x,) + tuple(unpermuted)
        memo[key] = (best_val, best_alloc)
        return memo[key]

    value, alloc = solve(0, cols)
    return value, alloc


# -- crossing counts --------------------------------------------------------

@dataclass(frozen=True)
class ArrangementValue:
    """Weyl-orbit maximum of ``|Phi_X & sigma N_Psi|`` with an optimal arrangement.

    ``witness_matrix[s][j]`` is the number of class-``j`` coordinates placed in
    block ``s``.
    """

    shape: SubsystemShape
    partition: MultiplicityPartition
    value: int
    witness_matrix: tuple[tuple[int, ...], ...]

    @property
    def complement(self) -> int:
        """``min_sigma |N_X & sigma N_Psi|``, which is ``|N_Psi| - value``."""
        return n_psi_size(self.shape) - self.value


def _check_same_m(p: MultiplicityPartition, s: SubsystemShape) -> None:
    if p.m != s.m:
        raise DimensionMismatch(f"partition has m={p.m} but shape has m={s.m}")


@lru_cache(maxsize=None)
def max_crossing(p: MultiplicityPartition, s: SubsystemShape) -> ArrangementValue:
    """Largest number of roots of Phi_X lying outside a Weyl conjugate of Psi."""
    _check_same_m(p, s)
    cost, matrix = optimize_arrangement(s.blocks, p.parts, maximize=False)
    return ArrangementValue(s, p, phi_size(p) - cost, matrix)


@lru_cache(maxsize=None)
def min_crossing(p: MultiplicityPartition, s: SubsystemShape) -> int:
    """Smallest number of roots of Phi_X lying outside a Weyl conjugate of Psi."""
    _check_same_m(p, s)
    cost, _ = optimize_arrangement(s.blocks, p.parts, maximize=True)
    return phi_size(p) - cost


@dataclass(frozen=True)
class CrossingBound:
    bound: Fraction
    equality_possible: bool


def crossing_bound(p: MultiplicityPartition, s: SubsystemShape) -> CrossingBound:
    """Equivalence-class bound ``(w/m) * 2c(m-c)`` for a corank-one ``s``.

    The bound is attained exactly when every class has size ``w`` and each
    class puts the same number of coordinates into the block of size ``c``.
    """
    _check_same_m(p, s)
    if corank(s) != 1:
        raise PartitionError(f"crossing bound needs a corank-one shape, got {list(s.blocks)}")
    m = p.m
    w = p.largest
    c = s.blocks[1]
    bound = Fraction(w, m) * 2 * c * (m - c)
    equal_classes = all(x == w for x in p.parts)
    return CrossingBound(bound, equal_classes and (c * w) % m == 0)


# -- margin tables ----------------------------------------------------------

@dataclass(frozen=True)
class MarginRow:
    """One inequality ``lhs <= rhs`` checked at one shape.

    ``literal_lhs``/``literal_rhs`` carry the max-over-sigma form of the L2
    hypothesis (``sum max|N_i & sigma N_Psi| >= |N_Psi| + corank``) for
    comparison; they are informational only.
    """

    shape: SubsystemShape
    lhs: int
    rhs: int
    corank: int
    literal_lhs: int | None = None
    literal_rhs: int | None = None

    @property
    def ok(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def literal_ok(self) -> bool | None:
        if self.literal_lhs is None:
            return None
        return self.literal_lhs >= self.literal_rhs

    def to_json(self) -> dict:
        out = {"shape": self.shape.to_json(), "lhs": self.lhs, "rhs": self.rhs,
               "corank": self.corank, "ok": self.ok}
        if self.literal_lhs is not None:
            out["literal_lhs"] = self.literal_lhs
            out["literal_rhs"] = self.literal_rhs
            out["literal_ok"] = self.literal_ok
        return out

    @classmethod
    def from_json(cls, d: dict) -> MarginRow:
        return cls(SubsystemShape(d["shape"]), d["lhs"], d["rhs"], d["corank"],
                   d.get("literal_lhs"), d.get("literal_rhs"))


@dataclass(frozen=True)
class MarginTable:
    kind: str
    rows: tuple[MarginRow, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def failing(self) -> MarginRow | None:
        return next((r for r in self.rows if not r.ok), None)

    def __bool__(self) -> bool:
        return self.ok


def open_check_general(t: OrbitTuple) -> MarginTable:
    """Sufficient condition for openness, checked on every corank-one shape.

    Row ``s`` holds ``sum_i max_crossing(p_i, s) <= (k-1)|N_Psi| - 1``, which
    is the same as ``sum_i min_sigma |N_i & sigma N_Psi| >= |N_Psi| + 1``.
    """
    rows = []
    for s in enumerate_corank_one_shapes(t.m):
        lhs = sum(max_crossing(p, s).value for p in t.partitions)
        rows.append(MarginRow(s, lhs, (t.k - 1) * n_psi_size(s) - 1, 1))
    return MarginTable("open", tuple(rows))


def l2_check(t: OrbitTuple) -> MarginTable:
    """Worst-arrangement L2 inequality on every proper shape.

    Row ``s`` holds ``sum_i max_crossing(p_i, s) <= (k-1)|N_Psi| - corank(s)``.
    """
    rows = []
    for s in enumerate_proper_shapes(t.m):
        n = n_psi_size(s)
        cr = corank(s)
        lhs = sum(max_crossing(p, s).value for p in t.partitions)
        literal = sum(n - min_crossing(p, s) for p in t.partitions)
        rows.append(MarginRow(s, lhs, (t.k - 1) * n - cr, cr, literal, n + cr))
    return MarginTable("l2", tuple(rows))


def rank_lower_bound(t: OrbitTuple, s: SubsystemShape) -> int:
    """``sum_i min_sigma |N_Psi & sigma N_i|`` for a corank-one ``s``."""
    if s.m != t.m:
        raise DimensionMismatch(f"shape has m={s.m} but tuple has m={t.m}")
    if corank(s) != 1:
        raise PartitionError(f"rank bound needs a corank-one shape, got {list(s.blocks)}")
    n = n_psi_size(s)
    return sum(n - max_crossing(p, s).value for p in t.partitions)


# -- the SU(m) classification ----------------------------------------------

def is_exception(t: OrbitTuple) -> bool:
    """Two orbits, each with two eigenvalues of equal multiplicity >= 2.

    Central orbits (partition ``(m,)``) are single points and only translate
    the sum, so they are dropped before the test.
    """
    m = t.m
    moving = [p for p in t.partitions if len(p.parts) > 1]
    if len(moving) != 2 or m % 2 or m // 2 < 2:
        return False
    half = (m // 2, m // 2)
    return all(p.parts == half for p in moving)


@dataclass(frozen=True)
class Theorem1:
    sum_q: int
    bound: int
    exception: bool

    @property
    def open(self) -> bool:
        return self.sum_q <= self.bound and not self.exception

    def to_json(self) -> dict:
        return {"sum_q": self.sum_q, "bound": self.bound, "exception": self.exception}


def theorem1_values(t: OrbitTuple) -> Theorem1:
    return Theorem1(sum(p.largest for p in t.partitions), (t.k - 1) * t.m, is_exception(t))


# -- singularity witnesses --------------------------------------------------

@dataclass(frozen=True)
class SingularWitness:
    """Explicit relative position certifying singularity.

    ``subsystem[p]`` is the block of coordinate ``p + 1`` in Psi, and
    ``arrangements[i][p]`` the eigenvalue class of coordinate ``p + 1`` for the
    ``i``-th orbit; class ``j`` must have ``partitions[i].parts[j]`` members.
    ``vectors`` optionally holds diagonal representatives realising the data.
    """

    partitions: tuple[MultiplicityPartition, ...]
    subsystem: tuple[int, ...]
    arrangements: tuple[tuple[int, ...], ...]
    family: str
    vectors: dict = field(default_factory=dict, compare=False)

    @property
    def m(self) -> int:
        return len(self.subsystem)

    @property
    def shape(self) -> SubsystemShape:
        return SubsystemShape.from_json(
            sorted(np.bincount(self.subsystem).tolist(), reverse=True))

    def crossing_sets(self) -> list[set[tuple[int, int]]]:
        """``N_i & N_Psi`` as sets of ordered coordinate pairs (1-based)."""
        m = self.m
        out = []
        for arr in self.arrangements:
            out.append({(p + 1, q + 1) for p in range(m) for q in range(m)
                        if arr[p] != arr[q] and self.subsystem[p] != self.subsystem[q]})
        return out

    def to_json(self) -> dict:
        out = {"family": self.family,
               "partitions": [p.to_json() for p in self.partitions],
               "subsystem": list(self.subsystem),
               "arrangements": [list(a) for a in self.arrangements]}
        if self.vectors:
            out["vectors"] = {k: list(v) for k, v in self.vectors.items()}
        return out

    @classmethod
    def from_json(cls, d: dict) -> SingularWitness:
        return cls(tuple(MultiplicityPartition(p) for p in d["partitions"]),
                   tuple(d["subsystem"]), tuple(tuple(a) for a in d["arrangements"]),
                   d["family"], {k: tuple(v) for k, v in d.get("vectors", {}).items()})


def _linear_witness(t: OrbitTuple) -> SingularWitness:
    # Psi = {1} | {2..m}; orbit i puts its largest class on S_i (which holds
    # coordinate 1) and the complements are packed from coordinate m downwards.
    m = t.m
    top = m
    arrangements = []
    for p in t.partitions:
        size = m - p.largest
        complement = list(range(top - size + 1, top + 1))
        top -= size
        labels = [0] * m
        cls_iter = (j for j, w in enumerate(p.parts[1:], start=1) for _ in range(w))
        for coord in complement:
            labels[coord - 1] = next(cls_iter)
        arrangements.append(tuple(labels))
    subsystem = (0,) + (1,) * (m - 1)
    return SingularWitness(t.partitions, subsystem, tuple(arrangements), LINEAR)


def _parity_witness(t: OrbitTuple) -> SingularWitness:
    h = t.m // 2
    first = [1 if p % 2 else -1 for p in range(1, h + 1)]
    z = first + first
    x1 = [1] * h + [-1] * h
    x2 = first + [-v for v in first]

    def labels(v):
        return tuple(0 if e == 1 else 1 for e in v)

    # central orbits have N_i empty, any labelling works
    moving = iter((labels(x1), labels(x2)))
    arrangements = tuple(next(moving) if len(p.parts) > 1 else (0,) * t.m
                         for p in t.partitions)
    return SingularWitness(t.partitions, labels(z), arrangements, PARITY,
                           {"Z": tuple(z), "X_1": tuple(x1), "X_2": tuple(x2)})


def singular_witness(t: OrbitTuple) -> SingularWitness | None:
    """Constructive witness for the two basic singular families, or ``None``."""
    th = theorem1_values(t)
    if th.sum_q >= th.bound + 1:
        return _linear_witness(t)
    if th.exception:
        return _parity_witness(t)
    return None


def verify_witness(w: SingularWitness) -> bool:
    """True iff the ``N_i & N_Psi`` of the witness are pairwise disjoint."""
    m = w.m
    if len(w.arrangements) != len(w.partitions):
        raise PartitionError("one arrangement per partition is required")
    if len(set(w.subsystem)) != 2:
        raise PartitionError(f"witness subsystem must have exactly two blocks: {w.subsystem}")
    for p, arr in zip(w.partitions, w.arrangements):
        if len(arr) != m or p.m != m:
            raise DimensionMismatch(f"arrangement {arr} does not label {m} coordinates")
        sizes = [arr.count(j) for j in range(len(p.parts))]
        if sizes != list(p.parts) or any(not 0 <= a < len(p.parts) for a in arr):
            raise PartitionError(f"arrangement {arr} does not realise {list(p.parts)}")
    sets = w.crossing_sets()
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if sets[i] & sets[j]:
                return False
    return True


# -- verdicts ---------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    classification: str
    measure_class: str
    theorem1: Theorem1
    margins: MarginTable | None = None
    failing_shape: SubsystemShape | None = None
    witness: SingularWitness | None = None
    witness_verified: bool | None = None

    def __post_init__(self):
        if (self.classification == OPEN) != (self.measure_class == IN_L2):
            raise ValueError("an Open verdict is exactly an L2 verdict")

    @property
    def is_open(self) -> bool:
        return self.classification == OPEN

    def to_json(self) -> dict:
        out = {"classification": self.classification,
               "measure_class": self.measure_class,
               "theorem1": self.theorem1.to_json()}
        if self.margins is not None:
            out["margins_kind"] = self.margins.kind
            out["margins"] = [r.to_json() for r in self.margins.rows]
        if self.failing_shape is not None:
            out["failing_shape"] = self.failing_shape.to_json()
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
            out["witness_verified"] = self.witness_verified
        return out

    @classmethod
    def from_json(cls, d: dict) -> Verdict:
        th = d["theorem1"]
        margins = None
        if "margins" in d:
            margins = MarginTable(d["margins_kind"],
                                  tuple(MarginRow.from_json(r) for r in d["margins"]))
        return cls(d["classification"], d["measure_class"],
                   Theorem1(th["sum_q"], th["bound"], th["exception"]),
                   margins,
                   SubsystemShape(d["failing_shape"]) if "failing_shape" in d else None,
                   SingularWitness.from_json(d["witness"]) if "witness" in d else None,
                   d.get("witness_verified"))


def su_classify(t: OrbitTuple) -> Verdict:
    """Open iff ``sum q_i <= (k-1) m`` and the tuple is not the exception."""
    th = theorem1_values(t)
    if th.open:
        return Verdict(OPEN, IN_L2, th)
    return Verdict(SINGULAR, SINGULAR_TO_HAAR, th)


def dichotomy_classify(t: OrbitTuple) -> Verdict:
    """``su_classify`` plus evidence: the L2 margin table for open tuples, the
    failing corank-one shape and a checked witness for singular ones."""
    base = su_classify(t)
    if base.is_open:
        return Verdict(OPEN, IN_L2, base.theorem1, margins=l2_check(t))
    table = open_check_general(t)
    failing = table.failing
    w = singular_witness(t)
    return Verdict(SINGULAR, SINGULAR_TO_HAAR, base.theorem1, margins=table,
                   failing_shape=failing.shape if failing else None,
                   witness=w, witness_verified=verify_witness(w) if w else None)


# -- independent brute-force oracles ---------------------------------------

def multiset_permutations(items: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Distinct orderings of a multiset, lexicographic."""
    pool = sorted(items)
    n = len(pool)

    def rec(prefix: list[int], counts: dict[int, int]):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in sorted(counts):
            if counts[v]:
                counts[v] -= 1
                prefix.append(v)
                yield from rec(prefix, counts)
                prefix.pop()
                counts[v] += 1

    counts: dict[int, int] = {}
    for v in pool:
        counts[v] = counts.get(v, 0) + 1
    yield from rec([], counts)


def _class_labels(parts: Sequence[int]) -> list[int]:
    return [j for j, w in enumerate(parts) for _ in range(w)]


def brute_force_crossing_range(p: MultiplicityPartition, s: SubsystemShape) -> tuple[int, int]:
    """``(min, max)`` of ``|Phi_X & sigma N_Psi|`` over every permutation sigma."""
    _check_same_m(p, s)
    m = p.m
    if m > BRUTE_FORCE_MAX_M:
        raise ValueError(f"brute force is limited to m <= {BRUTE_FORCE_MAX_M}, got {m}")
    classes = np.array(_class_labels(p.parts))
    blocks = np.array(_class_labels(s.blocks))
    perms = np.array(list(permutations(range(m))), dtype=np.intp)
    labels = classes[perms]
    same = labels[:, :, None] == labels[:, None, :]
    cross = blocks[:, None] != blocks[None, :]
    counts = (same & cross).sum(axis=(1, 2))
    return int(counts.min()), int(counts.max())


def brute_force_max_crossing(p: MultiplicityPartition, s: SubsystemShape) -> int:
    return brute_force_crossing_range(p, s)[1]


def exhaustive_witness_search(t: OrbitTuple) -> SingularWitness | None:
    """Search every corank-one Psi and every tuple of arrangements for a
    disjointness witness. Factorial cost; test oracle only."""
    m = t.m
    if m > SEARCH_MAX_M:
        raise ValueError(f"exhaustive search is limited to m <= {SEARCH_MAX_M}, got {m}")
    for s in enumerate_corank_one_shapes(m):
        blocks = tuple(_class_labels(s.blocks))
        per_orbit = []
        for p in t.partitions:
            seen: dict[frozenset, tuple[int, ...]] = {}
            for arr in multiset_permutations(_class_labels(p.parts)):
                key = frozenset((a, b) for a in range(m) for b in range(m)
                                if arr[a] != arr[b] and blocks[a] != blocks[b])
                seen.setdefault(key, arr)
            per_orbit.append(list(seen.items()))

        def search(i: int, used: frozenset, chosen: list):
            if i == len(per_orbit):
                return list(chosen)
            for key, arr in per_orbit[i]:
                if not key & used:
                    chosen.append(arr)
                    found = search(i + 1, used | key, chosen)
                    if found is not None:
                        return found
                    chosen.pop()
            return None

        found = search(0, frozenset(), [])
        if found is not None:
            return SingularWitness(t.partitions, blocks, tuple(found), SEARCH)
    return None
