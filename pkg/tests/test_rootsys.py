from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbitsum.rootsys import (
    DimensionMismatch,
    MultiplicityPartition,
    OrbitTuple,
    PartitionError,
    SubsystemShape,
    all_partitions,
    corank,
    enumerate_corank_one_shapes,
    enumerate_proper_shapes,
    integer_partitions,
    n_psi_size,
    phi_size,
)

P = MultiplicityPartition
S = SubsystemShape


def roots_within(labels):
    """Ordered pairs (p, q), p != q, carrying the same label."""
    m = len(labels)
    return {(p, q) for p in range(m) for q in range(m) if p != q and labels[p] == labels[q]}


def labels_of(parts):
    return [j for j, w in enumerate(parts) for _ in range(w)]


@st.composite
def partitions(draw, max_m=9):
    m = draw(st.integers(1, max_m))
    return draw(st.sampled_from(all_partitions(m)))


def test_phi_size_examples():
    assert phi_size(P.regular(6)) == 0
    assert phi_size(P((5,))) == 20
    assert phi_size(P((2, 2))) == len(roots_within(labels_of((2, 2)))) == 4


def test_n_psi_size_examples():
    for m in range(2, 9):
        for c in range(1, m):
            s = S.from_json(sorted([c, m - c], reverse=True))
            assert n_psi_size(s) == 2 * c * (m - c)
    assert n_psi_size(S((2, 2))) == 12 - len(roots_within(labels_of((2, 2)))) == 8
    assert n_psi_size(S((1,) * 5)) == 20


def test_corank_examples():
    assert corank(S((2, 2))) == 1
    assert corank(S((2, 1, 1))) == 2
    assert corank(S((1,) * 6)) == 5
    assert corank(S((4,))) == 0


def test_shape_enumeration():
    assert set(enumerate_proper_shapes(4)) == {S((3, 1)), S((2, 2)), S((2, 1, 1)), S((1, 1, 1, 1))}
    assert enumerate_proper_shapes(2) == [S((1, 1))]
    assert set(enumerate_proper_shapes(3)) == {S((2, 1)), S((1, 1, 1))}
    assert set(enumerate_corank_one_shapes(4)) == {S((3, 1)), S((2, 2))}
    assert enumerate_corank_one_shapes(2) == [S((1, 1))]
    assert set(enumerate_corank_one_shapes(5)) == {S((4, 1)), S((3, 2))}


def _partition_count_brute(n):
    # distinct sorted tuples among all compositions
    seen = set()

    def rec(rest, acc):
        if rest == 0:
            seen.add(tuple(sorted(acc, reverse=True)))
            return
        for x in range(1, rest + 1):
            rec(rest - x, acc + [x])

    rec(n, [])
    return seen


@pytest.mark.parametrize("n", range(1, 11))
def test_integer_partitions_match_brute_force(n):
    got = list(integer_partitions(n))
    assert len(got) == len(set(got))
    assert set(got) == _partition_count_brute(n)


@pytest.mark.parametrize("m", range(2, 10))
def test_shape_invariants(m):
    proper = enumerate_proper_shapes(m)
    assert len(proper) == len(set(proper))
    assert S((m,)) not in proper
    for s in proper:
        assert corank(s) > 0
        assert n_psi_size(s) + sum(t * (t - 1) for t in s.blocks) == m * (m - 1)
    corank_one = enumerate_corank_one_shapes(m)
    assert set(corank_one) == {s for s in proper if len(s.blocks) == 2}


def test_n_psi_matches_explicit_roots():
    for m in range(2, 7):
        for s in enumerate_proper_shapes(m):
            m2 = m * (m - 1)
            assert n_psi_size(s) == m2 - len(roots_within(labels_of(s.blocks)))


@given(st.lists(st.integers(1, 5), min_size=1, max_size=6))
def test_phi_size_order_free(parts):
    p = P.from_unsorted(parts)
    for perm in set(permutations(parts)):
        assert P.from_unsorted(perm) == p
    assert phi_size(p) == sum(w * (w - 1) for w in parts)


@given(partitions())
def test_json_round_trip(p):
    assert P.from_json(p.to_json()) == p
    assert P.from_json(str(p.to_json())) == p


def test_validation():
    with pytest.raises(PartitionError):
        P((1, 2))
    with pytest.raises(PartitionError):
        P.from_json("[1, 2]")
    with pytest.raises(PartitionError):
        P((2, 0))
    with pytest.raises(PartitionError):
        P(())
    with pytest.raises(PartitionError):
        P((3, 2), m=4)
    with pytest.raises(PartitionError):
        S.from_json("not json")
    with pytest.raises(DimensionMismatch):
        OrbitTuple([(2, 2), (2, 1)])
    with pytest.raises(ValueError):
        OrbitTuple([(1, 1)], case="lattice")


def test_orbit_tuple_fields():
    t = OrbitTuple([(2, 2), P((2, 1, 1))], case="group")
    assert (t.m, t.k, t.case) == (4, 2, "group")
    assert t.to_json() == {"m": 4, "case": "group", "partitions": [[2, 2], [2, 1, 1]]}
