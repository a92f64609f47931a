"""Symmetric matrices over GF(2) and their nondegeneracy delta-matroids."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .core import MAX_N, CapacityError, DeltaMatroid, DeltaMatroidError, SetSystem, squeeze, twist


@dataclass(frozen=True)
class Gf2SymMatrix:
    """``rows[i]`` has bit ``j`` set iff entry ``(i+1, j+1)`` is one."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        if len(rows) != self.n:
            raise DeltaMatroidError(f"expected {self.n} rows, got {len(rows)}")
        object.__setattr__(self, "rows", rows)
        for i, r in enumerate(rows):
            if r < 0 or r >> self.n:
                raise DeltaMatroidError(f"row {i + 1} has entries outside {self.n} columns")
            for j in range(self.n):
                if (r >> j & 1) != (rows[j] >> i & 1):
                    raise DeltaMatroidError(f"matrix is not symmetric at ({i + 1},{j + 1})")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "Gf2SymMatrix":
        rows = []
        for row in entries:
            m = 0
            for j, v in enumerate(row):
                if v not in (0, 1):
                    raise DeltaMatroidError(f"entry {v!r} is not 0 or 1")
                m |= v << j
            rows.append(m)
        return cls(len(rows), tuple(rows))

    @classmethod
    def ones(cls, n: int) -> "Gf2SymMatrix":
        return cls(n, ((1 << n) - 1,) * n)

    @classmethod
    def zeros(cls, n: int) -> "Gf2SymMatrix":
        return cls(n, (0,) * n)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i - 1] >> (j - 1) & 1

    def to_lists(self) -> list[list[int]]:
        return [[r >> j & 1 for j in range(self.n)] for r in self.rows]

    def principal(self, sub: int) -> "Gf2SymMatrix":
        idx = [i for i in range(self.n) if sub >> i & 1]
        return Gf2SymMatrix(len(idx), tuple(squeeze(self.rows[i], sub) for i in idx))


def rank(rows: Sequence[int]) -> int:
    """Rank over GF(2) of packed rows, by elimination."""
    work = list(rows)
    r = 0
    for i in range(len(work)):
        pivot = work[i]
        if not pivot:
            continue
        r += 1
        low = pivot & -pivot
        for j in range(i + 1, len(work)):
            if work[j] & low:
                work[j] ^= pivot
    return r


def nondegenerate(A: Gf2SymMatrix) -> bool:
    """Full rank over GF(2); the 0x0 matrix counts as nondegenerate."""
    return rank(A.rows) == A.n


def _principal_nondegenerate(rows: Sequence[int], sub: int) -> bool:
    work = [rows[i] & sub for i in range(len(rows)) if sub >> i & 1]
    for i in range(len(work)):
        pivot = work[i]
        if not pivot:
            return False
        low = pivot & -pivot
        for j in range(i + 1, len(work)):
            if work[j] & low:
                work[j] ^= pivot
    return True


def matrix_delta_matroid(A: Gf2SymMatrix) -> DeltaMatroid:
    """``M_A``: X feasible iff the principal submatrix ``A[X]`` is nondegenerate."""
    if A.n > MAX_N:
        raise CapacityError(f"n={A.n} exceeds {MAX_N}")
    fam = [X for X in range(1 << A.n) if _principal_nondegenerate(A.rows, X)]
    return DeltaMatroid.trusted(A.n, fam)


def extend_matrix(A: Gf2SymMatrix) -> Gf2SymMatrix:
    """Append element n+1 joined to element 1 only, with a zero diagonal entry."""
    if A.n < 1:
        raise DeltaMatroidError("extension needs n >= 1")
    new = 1 << A.n
    rows = list(A.rows)
    rows[0] |= new
    rows.append(1)
    return Gf2SymMatrix(A.n + 1, tuple(rows))


@dataclass(frozen=True)
class BinaryWitness:
    matrix: Gf2SymMatrix
    twist_set: int


def reconstruct_matrix(S: SetSystem) -> Gf2SymMatrix:
    """The only matrix A that could have ``M_A == S`` when ∅ is feasible in S.

    The diagonal is read off singletons and the off-diagonal entries off pairs
    (a 2x2 principal minor is ``a_ii a_jj + a_ij``).
    """
    n = S.n
    diag = [int(S.is_feasible(1 << i)) for i in range(n)]
    rows = [diag[i] << i for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a = int(S.is_feasible(1 << i | 1 << j)) ^ (diag[i] & diag[j])
            if a:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Gf2SymMatrix(n, tuple(rows))


def is_binary(S: SetSystem) -> BinaryWitness | None:
    """Witness ``(A, F)`` with ``twist(M_A, F) == S``, or None if S is not binary.

    Twisting by the least feasible set makes ∅ feasible; a binary delta-matroid
    with ∅ feasible is ``M_A`` for the reconstructed A, so one comparison decides.
    """
    if S.n > MAX_N:
        raise CapacityError(f"n={S.n} exceeds {MAX_N}")
    F = S.feasible[0]
    T = twist(S, F)
    A = reconstruct_matrix(T)
    if matrix_delta_matroid(A).feasible == T.feasible:
        return BinaryWitness(A, F)
    return None


# ---------- brute-force oracle


def all_symmetric_matrices(n: int):
    """Every symmetric n x n matrix over GF(2) (``2^(n(n+1)/2)`` of them)."""
    slots = [(i, j) for i in range(n) for j in range(i, n)]
    for bits in range(1 << len(slots)):
        rows = [0] * n
        for k, (i, j) in enumerate(slots):
            if bits >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        yield Gf2SymMatrix(n, tuple(rows))


def _leibniz_nondegenerate(entries: np.ndarray, idx: list[int]) -> np.ndarray:
    """det mod 2 of ``entries[:, idx][:, :, idx]`` by the permutation expansion."""
    k = len(idx)
    if k == 0:
        return np.ones(entries.shape[0], dtype=bool)
    det = np.zeros(entries.shape[0], dtype=bool)
    for perm in itertools.permutations(range(k)):
        term = np.ones(entries.shape[0], dtype=bool)
        for r, c in enumerate(perm):
            term &= entries[:, idx[r], idx[c]]
        det ^= term
    return det


@lru_cache(maxsize=None)
def binary_universe(n: int) -> frozenset[int]:
    """Every binary delta-matroid on n labeled elements, as a ``2^n``-bit indicator.

    Bit ``X`` of an indicator is set iff X is feasible. Built by brute force:
    all symmetric matrices, determinants by permutation expansion, all twists.
    """
    if n > 5:
        raise CapacityError("brute-force binary universe supports n <= 5")
    slots = [(i, j) for i in range(n) for j in range(i, n)]
    count = 1 << len(slots)
    codes = np.arange(count, dtype=np.int64)
    entries = np.zeros((count, n, n), dtype=bool)
    for k, (i, j) in enumerate(slots):
        bit = (codes >> k & 1).astype(bool)
        entries[:, i, j] = bit
        entries[:, j, i] = bit
    size = 1 << n
    feas = np.zeros((count, size), dtype=bool)
    for X in range(size):
        feas[:, X] = _leibniz_nondegenerate(entries, [i for i in range(n) if X >> i & 1])
    weights = np.uint64(1) << np.arange(size, dtype=np.uint64)
    subsets = np.arange(size)
    out: set[int] = set()
    for T in range(size):
        packed = feas[:, subsets ^ T].astype(np.uint64) @ weights
        out.update(int(v) for v in np.unique(packed))
    return frozenset(out)


def indicator(S: SetSystem) -> int:
    v = 0
    for F in S.feasible:
        v |= 1 << F
    return v


def is_binary_oracle(S: SetSystem) -> bool:
    return indicator(S) in binary_universe(S.n)
