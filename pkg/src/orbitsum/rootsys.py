"""Integer model of the type A root system A_{m-1}.

Everything here works up to the Weyl group S_m: an annihilating subsystem is
described by the multiplicities of the eigenvalues, and an arbitrary root
subsystem by the sizes of the blocks of a set partition of {1..m}.

Roots are counted as ordered pairs ``(p, q)`` with ``p != q``, i.e. both
``e_p - e_q`` and ``e_q - e_p`` are counted. Every count in this package uses
that convention.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence


class PartitionError(ValueError):
    """Raised for malformed partitions or shapes."""


class DimensionMismatch(ValueError):
    """Raised when objects living in different su(m) are combined."""


def _check_parts(parts: Sequence[int], m: int | None, what: str) -> tuple[int, ...]:
    parts = tuple(parts)
    if not parts:
        raise PartitionError(f"{what} must have at least one part")
    for x in parts:
        if isinstance(x, bool) or not isinstance(x, int) or x < 1:
            raise PartitionError(f"{what} parts must be positive integers, got {x!r}")
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise PartitionError(f"{what} {list(parts)} is not in nonincreasing order")
    if m is not None and sum(parts) != m:
        raise PartitionError(f"{what} {list(parts)} sums to {sum(parts)}, expected m={m}")
    return parts


@dataclass(frozen=True, order=True)
class MultiplicityPartition:
    """Eigenvalue multiplicities ``w_1 >= ... >= w_d`` of an element of su(m).

    Encodes the annihilating subsystem ``A_{w_1-1} x ... x A_{w_d-1}``.
    """

    parts: tuple[int, ...]

    def __init__(self, parts: Sequence[int], m: int | None = None):
        object.__setattr__(self, "parts", _check_parts(parts, m, "partition"))

    @classmethod
    def from_unsorted(cls, parts: Sequence[int]) -> MultiplicityPartition:
        return cls(sorted(parts, reverse=True))

    @classmethod
    def regular(cls, m: int) -> MultiplicityPartition:
        return cls((1,) * m)

    @property
    def m(self) -> int:
        return sum(self.parts)

    @property
    def largest(self) -> int:
        """Highest eigenvalue multiplicity ``q``."""
        return self.parts[0]

    def to_json(self) -> list[int]:
        return list(self.parts)

    @classmethod
    def from_json(cls, data: str | Sequence[int]) -> MultiplicityPartition:
        return cls(_parse_int_array(data))

    def __repr__(self) -> str:
        return f"MultiplicityPartition({list(self.parts)})"


@dataclass(frozen=True, order=True)
class SubsystemShape:
    """Block sizes ``t_1 >= ... >= t_l`` of a root subsystem of A_{m-1}.

    ``(m,)`` is the whole root system; ``(1,) * m`` is the empty subsystem.
    """

    blocks: tuple[int, ...]

    def __init__(self, blocks: Sequence[int], m: int | None = None):
        object.__setattr__(self, "blocks", _check_parts(blocks, m, "shape"))

    @property
    def m(self) -> int:
        return sum(self.blocks)

    @property
    def rank(self) -> int:
        return self.m - len(self.blocks)

    @property
    def is_proper(self) -> bool:
        return len(self.blocks) > 1

    def to_json(self) -> list[int]:
        return list(self.blocks)

    @classmethod
    def from_json(cls, data: str | Sequence[int]) -> SubsystemShape:
        return cls(_parse_int_array(data))

    def __repr__(self) -> str:
        return f"SubsystemShape({list(self.blocks)})"


ALGEBRA = "algebra"
GROUP = "group"
CASES = (ALGEBRA, GROUP)


@dataclass(frozen=True)
class OrbitTuple:
    """``k`` multiplicity partitions of the same ``m``, in su(m) or SU(m)."""

    partitions: tuple[MultiplicityPartition, ...]
    case: str = ALGEBRA

    def __init__(self, partitions: Sequence[MultiplicityPartition | Sequence[int]],
                 case: str = ALGEBRA):
        parts = tuple(p if isinstance(p, MultiplicityPartition) else MultiplicityPartition(p)
                      for p in partitions)
        if not parts:
            raise PartitionError("an orbit tuple needs at least one partition")
        ms = {p.m for p in parts}
        if len(ms) != 1:
            raise DimensionMismatch(f"partitions live in different su(m): m in {sorted(ms)}")
        if case not in CASES:
            raise ValueError(f"case must be one of {CASES}, got {case!r}")
        object.__setattr__(self, "partitions", parts)
        object.__setattr__(self, "case", case)

    @property
    def m(self) -> int:
        return self.partitions[0].m

    @property
    def k(self) -> int:
        return len(self.partitions)

    def to_json(self) -> dict:
        return {"m": self.m, "case": self.case,
                "partitions": [p.to_json() for p in self.partitions]}


def _parse_int_array(data: str | Sequence[int]) -> list[int]:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise PartitionError(f"not a JSON integer array: {data!r}") from exc
    if not isinstance(data, list):
        raise PartitionError(f"expected a JSON integer array, got {data!r}")
    return data


def phi_size(p: MultiplicityPartition) -> int:
    """Number of roots vanishing on X: ordered pairs inside one eigenspace."""
    return sum(w * (w - 1) for w in p.parts)


def n_psi_size(s: SubsystemShape) -> int:
    """``|N_Psi|``: roots not in the subsystem, i.e. ordered pairs across blocks."""
    m = s.m
    return m * (m - 1) - sum(t * (t - 1) for t in s.blocks)


def corank(s: SubsystemShape) -> int:
    return len(s.blocks) - 1


def integer_partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` in nonincreasing form, reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def all_partitions(m: int) -> tuple[MultiplicityPartition, ...]:
    """Every multiplicity partition of ``m``, sorted lexicographically ascending."""
    if m < 1:
        raise PartitionError(f"m must be positive, got {m}")
    return tuple(sorted(MultiplicityPartition(p) for p in integer_partitions(m)))


def enumerate_proper_shapes(m: int) -> list[SubsystemShape]:
    """All shapes of ``m`` except ``(m,)``; includes the empty subsystem."""
    if m < 2:
        raise PartitionError(f"proper subsystems need m >= 2, got {m}")
    return [SubsystemShape(b) for b in integer_partitions(m) if len(b) > 1]


def enumerate_corank_one_shapes(m: int) -> list[SubsystemShape]:
    """Two-block shapes ``(m - c, c)`` for ``c = 1 .. m // 2``."""
    if m < 2:
        raise PartitionError(f"corank-one subsystems need m >= 2, got {m}")
    return [SubsystemShape((m - c, c)) for c in range(1, m // 2 + 1)]
