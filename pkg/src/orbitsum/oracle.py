"""Randomised numerical check of open/singular verdicts.

A sum of orbits (or product of conjugacy classes) is open exactly when the
conjugated centralisers ``Ad(g_i) n_i`` have trivial common intersection for
some ``(g_1, ..., g_k)``, and then for generic ones. So we draw Haar-random
``g_i``, intersect, and read off a dimension. A single confident zero proves
openness up to floating-point confidence; nonzero dimensions on every sample
are only statistical evidence of singularity.

su(m) is identified with R^(m^2 - 1) through a fixed basis that is orthonormal
for ``<A, B> = Re tr(A^* B)``, which is Ad-invariant.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .rootsys import ALGEBRA, GROUP, MultiplicityPartition, OrbitTuple

GAP_RATIO = 1e4
DEFAULT_TOL = 1e-8
DEFAULT_SAMPLES = 32
ORACLE_MAX_M = 8

OPEN_CERTIFICATE = "OpenCertificate"
SINGULAR_EVIDENCE = "SingularEvidence"
INCONCLUSIVE = "Inconclusive"


class NumericalRankError(ArithmeticError):
    """A rank decision could not be made with the required separation."""


# -- elements ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """Traceless anti-Hermitian matrix, an element of su(m)."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        if np.max(np.abs(a + a.conj().T), initial=0.0) > 1e-12:
            raise ValueError("matrix is not anti-Hermitian")
        if abs(np.trace(a)) > 1e-12:
            raise ValueError("matrix is not traceless")
        object.__setattr__(self, "entries", a)

    @property
    def m(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class GroupElement:
    """Special unitary matrix, an element of SU(m)."""

    entries: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.entries, dtype=complex)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {u.shape}")
        if np.linalg.norm(u @ u.conj().T - np.eye(u.shape[0]), 2) > 1e-10:
            raise ValueError("matrix is not unitary")
        if abs(np.linalg.det(u) - 1) > 1e-10:
            raise ValueError("determinant is not 1")
        object.__setattr__(self, "entries", u)

    @property
    def m(self) -> int:
        return self.entries.shape[0]


def build_representative(p: MultiplicityPartition, case: str = ALGEBRA):
    """Diagonal element whose eigenvalue multiplicities are exactly ``p``.

    Algebra: eigenvalue ``i * lambda_j`` with ``lambda_j = j - mean`` (spacing 1).
    Group: ``exp(i theta_j)`` with ``theta_j = 2 pi j / (m + 1)`` plus a common
    shift fixing the determinant; distinct classes never differ by 2 pi Z.
    """
    m = p.m
    idx = np.repeat(np.arange(1, len(p.parts) + 1), p.parts).astype(float)
    if case == ALGEBRA:
        lam = idx - idx.sum() / m
        return AlgebraElement(np.diag(1j * lam))
    if case == GROUP:
        theta = 2 * np.pi * idx / (m + 1)
        theta -= theta.sum() / m
        return GroupElement(np.diag(np.exp(1j * theta)))
    raise ValueError(f"unknown case {case!r}")


def haar_sample(m: int, rng: np.random.Generator) -> GroupElement:
    """Haar-random element of SU(m): QR of a complex Ginibre matrix with the
    phases of R's diagonal moved into Q, then divided by an m-th root of det."""
    if m == 1:
        return GroupElement(np.ones((1, 1), dtype=complex))
    z = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    q = q * (d / np.abs(d))
    q = q / np.linalg.det(q) ** (1.0 / m)
    return GroupElement(q)


# -- coordinates on su(m) --------------------------------------------------

@lru_cache(maxsize=None)
def su_basis(m: int) -> np.ndarray:
    """Orthonormal basis of su(m), shape ``(m^2 - 1, m, m)``."""
    mats = []
    for p in range(m):
        for q in range(p + 1, m):
            a = np.zeros((m, m), dtype=complex)
            a[p, q], a[q, p] = 1, -1
            mats.append(a / np.sqrt(2))
            b = np.zeros((m, m), dtype=complex)
            b[p, q] = b[q, p] = 1j
            mats.append(b / np.sqrt(2))
    for j in range(1, m):
        h = np.zeros(m)
        h[:j] = 1
        h[j] = -j
        mats.append(np.diag(1j * h / np.sqrt(j * (j + 1))))
    out = np.array(mats).reshape(m * m - 1, m, m)
    out.setflags(write=False)
    return out


def to_coords(y: np.ndarray) -> np.ndarray:
    """Real coordinates of one matrix, or a stack of matrices, in ``su_basis``."""
    basis = su_basis(y.shape[-1])
    return np.real(np.einsum("aij,...ij->...a", basis.conj(), y))


def adjoint_matrix(g: GroupElement) -> np.ndarray:
    """``Ad(g)`` as a real orthogonal matrix in ``su_basis`` coordinates."""
    basis = su_basis(g.m)
    u = g.entries
    return to_coords(u @ basis @ u.conj().T).T


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """Orthonormal rows spanning a real subspace of su(m)."""

    vectors: np.ndarray
    m: int

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=float).reshape(len(self.vectors), self.m * self.m - 1)
        if np.max(np.abs(v @ v.T - np.eye(len(v))), initial=0.0) > 1e-10:
            raise ValueError("basis vectors are not orthonormal")
        object.__setattr__(self, "vectors", v)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def ambient(self) -> int:
        return self.m * self.m - 1

    def projector(self) -> np.ndarray:
        return self.vectors.T @ self.vectors


def centralizer_basis(e: AlgebraElement | GroupElement, tol: float = DEFAULT_TOL) -> SubspaceBasis:
    """Basis of ``ker ad(X)`` for an algebra element or ``ker(Ad(x^-1) - Id)``
    for a group element."""
    m = e.m
    basis = su_basis(m)
    x = e.entries
    if isinstance(e, AlgebraElement):
        images = x @ basis - basis @ x
    else:
        images = x.conj().T @ basis @ x - basis
    op = to_coords(images).T
    _, s, vt = np.linalg.svd(op)
    scale = max(1.0, s[0]) if len(s) else 1.0
    nullity = int(np.sum(s < tol * scale))
    rank = len(s) - nullity
    if 0 < rank and s[rank - 1] < 1e3 * tol * scale:
        raise NumericalRankError(
            f"eigenvalue clusters too close: smallest nonzero singular value {s[rank - 1]:.3e}")
    return SubspaceBasis(vt[rank:], m)


def conjugate_basis(b: SubspaceBasis, g: GroupElement) -> SubspaceBasis:
    """Basis of ``Ad(g) span(b)``."""
    return SubspaceBasis(b.vectors @ adjoint_matrix(g).T, b.m)


# -- intersections ---------------------------------------------------------

@dataclass(frozen=True)
class GapStats:
    """Singular values on either side of the rank cut.

    With nothing above the cut, ``above`` is 1 (the projector scale); with
    nothing below, ``below`` is ``tol``.
    """

    above: float
    below: float
    ratio: float

    @property
    def conclusive(self) -> bool:
        return self.ratio >= GAP_RATIO


def intersection_dimension(bases: list[SubspaceBasis], tol: float = DEFAULT_TOL) -> tuple[int, GapStats]:
    """Dimension of the common intersection of the spans of ``bases``.

    It is the nullity of the stacked projectors onto the orthogonal
    complements: ``v`` is in every span iff every ``(I - P_i) v`` vanishes.
    """
    if not bases:
        raise ValueError("need at least one subspace")
    n = bases[0].ambient
    if any(b.ambient != n for b in bases):
        raise ValueError("subspaces live in different ambient spaces")
    eye = np.eye(n)
    stacked = np.vstack([eye - b.projector() for b in bases])
    s = np.linalg.svd(stacked, compute_uv=False)
    nullity = int(np.sum(s < tol))
    rank = n - nullity
    above = float(s[rank - 1]) if rank > 0 else 1.0
    below = float(s[rank]) if nullity > 0 else tol
    ratio = above / max(below, np.finfo(float).tiny)
    return nullity, GapStats(above, below, ratio)


# -- the classifier ---------------------------------------------------------

@dataclass(frozen=True)
class OracleVerdict:
    outcome: str
    samples: int
    dims: tuple[int, ...]
    ratios: tuple[float, ...]
    seed: int
    tol: float
    case: str
    partitions: tuple[tuple[int, ...], ...]
    requested: int = 0

    @property
    def histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.dims).items()))

    @property
    def is_proof(self) -> bool:
        return self.outcome == OPEN_CERTIFICATE

    def gap_summary(self) -> dict:
        logs = sorted(math.log10(r) for r in self.ratios)
        if not logs:
            return {}
        return {"min_log10_ratio": logs[0], "median_log10_ratio": logs[len(logs) // 2],
                "max_log10_ratio": logs[-1]}

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome,
            "interpretation": "certificate" if self.is_proof else "evidence",
            "case": self.case,
            "partitions": [list(p) for p in self.partitions],
            "seed": self.seed,
            "tol": self.tol,
            "requested": self.requested,
            "samples": self.samples,
            "dims": list(self.dims),
            "histogram": {str(k): v for k, v in self.histogram.items()},
            "ratios": list(self.ratios),
            "gap": self.gap_summary(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _sample(centralizers, m: int, seed_seq: np.random.SeedSequence, tol: float):
    rng = np.random.default_rng(seed_seq)
    bases = [conjugate_basis(c, haar_sample(m, rng)) for c in centralizers]
    return intersection_dimension(bases, tol)


def numeric_classify(t: OrbitTuple, samples: int = DEFAULT_SAMPLES, tol: float = DEFAULT_TOL,
                     seed: int = 0, stop_early: bool = True, workers: int = 1) -> OracleVerdict:
    """Sample ``samples`` tuples of Haar elements and classify by intersection
    dimension. Each sample has its own generator spawned from ``seed``, so the
    result does not depend on ``workers``."""
    if samples < 1:
        raise ValueError("need at least one sample")
    if t.m > ORACLE_MAX_M:
        raise ValueError(f"numeric oracle is limited to m <= {ORACLE_MAX_M}, got {t.m}")
    m = t.m
    centralizers = [centralizer_basis(build_representative(p, t.case)) for p in t.partitions]
    streams = np.random.SeedSequence(seed).spawn(samples)

    results = []
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda ss: _sample(centralizers, m, ss, tol), streams))
    else:
        for ss in streams:
            dim, gap = _sample(centralizers, m, ss, tol)
            results.append((dim, gap))
            if stop_early and dim == 0 and gap.conclusive:
                break

    taken = []
    outcome = None
    for dim, gap in results:
        taken.append((dim, gap))
        if dim == 0 and gap.conclusive:
            outcome = OPEN_CERTIFICATE
            if stop_early:
                break
    if outcome is None:
        confident = all(d >= 1 and g.conclusive for d, g in taken)
        outcome = SINGULAR_EVIDENCE if confident else INCONCLUSIVE
    return OracleVerdict(outcome, len(taken), tuple(d for d, _ in taken),
                         tuple(g.ratio for _, g in taken), seed, tol, t.case,
                         tuple(p.parts for p in t.partitions), samples)
