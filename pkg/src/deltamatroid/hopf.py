"""Graded combinations of delta-matroids, the coproduct and projection to primitives."""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator

from .core import (
    MAX_CANONICAL_N,
    UNIT,
    CapacityError,
    DeltaMatroid,
    DeltaMatroidError,
    SetSystem,
    canonical,
    product,
    restrict,
)
from .gf2 import Gf2SymMatrix, extend_matrix, matrix_delta_matroid
from .graphs import SimpleGraph, graph_delta_matroid
from .polynomial import IntPolynomial, interlace_poly

MAX_PROJECT_N = 10

Key = DeltaMatroid


def _key(D: SetSystem) -> Key:
    return DeltaMatroid.of(canonical(DeltaMatroid.of(D)))


def _order(K: SetSystem) -> tuple:
    return K.n, len(K.feasible), K.feasible


class DmCombination:
    """Integer combination of canonical delta-matroids sharing one grade."""

    __slots__ = ("terms", "grade")

    def __init__(self, terms: dict[Key, int] | None = None, grade: int = 0):
        self.grade = grade
        self.terms: dict[Key, int] = {}
        for K, c in (terms or {}).items():
            if K.n != grade:
                raise DeltaMatroidError(f"term of grade {K.n} in a grade-{grade} combination")
            if c:
                self.terms[K] = c

    @classmethod
    def of(cls, D: SetSystem, coeff: int = 1) -> "DmCombination":
        return cls({_key(D): coeff}, D.n)

    @classmethod
    def zero(cls, grade: int) -> "DmCombination":
        return cls({}, grade)

    def _merge(self, other: "DmCombination", sign: int) -> "DmCombination":
        if self.terms and other.terms and self.grade != other.grade:
            raise DeltaMatroidError("cannot add combinations of different grades")
        grade = self.grade if self.terms else other.grade
        out = defaultdict(int, self.terms)
        for K, c in other.terms.items():
            out[K] += sign * c
        return DmCombination(dict(out), grade)

    def __add__(self, other):
        return self._merge(other, 1)

    def __sub__(self, other):
        return self._merge(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, k: int) -> "DmCombination":
        return DmCombination({K: k * c for K, c in self.terms.items()}, self.grade)

    def __mul__(self, other: "DmCombination") -> "DmCombination":
        out: dict[Key, int] = defaultdict(int)
        for K1, c1 in self.terms.items():
            for K2, c2 in other.terms.items():
                out[product_key((K1, K2))] += c1 * c2
        return DmCombination(dict(out), self.grade + other.grade)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, DmCombination):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.grade == other.grade and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: _order(kv[0]))

    def __repr__(self):
        body = " ".join(f"{c:+d}*{K.feasible}" for K, c in self.items())
        return f"DmCombination(grade={self.grade}: {body or '0'})"


class TensorCombination:
    """Integer combination of ordered pairs of canonical delta-matroids."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[Key, Key], int] | None = None):
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    def __add__(self, other):
        out = defaultdict(int, self.terms)
        for k, c in other.terms.items():
            out[k] += c
        return TensorCombination(dict(out))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k: int) -> "TensorCombination":
        return TensorCombination({p: k * c for p, c in self.terms.items()})

    def __mul__(self, other: "TensorCombination") -> "TensorCombination":
        out = defaultdict(int)
        for (a, b), c1 in self.terms.items():
            for (x, y), c2 in other.terms.items():
                out[(product_key((a, x)), product_key((b, y)))] += c1 * c2
        return TensorCombination(dict(out))

    def swap(self) -> "TensorCombination":
        return TensorCombination({(b, a): c for (a, b), c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TensorCombination):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        return f"TensorCombination({len(self.terms)} terms)"


def tensor(a: DmCombination, b: DmCombination) -> TensorCombination:
    return TensorCombination(
        {(K1, K2): c1 * c2 for K1, c1 in a.terms.items() for K2, c2 in b.terms.items()}
    )


ONE = DmCombination.of(UNIT)


@lru_cache(maxsize=200_000)
def product_key(factors: tuple[Key, ...]) -> Key:
    """Canonical form of the product of canonical factors (order irrelevant)."""
    factors = tuple(sorted((K for K in factors if K.n), key=_order))
    if not factors:
        return UNIT
    if len(factors) == 1:
        return factors[0]
    return _product_sorted(factors)


@lru_cache(maxsize=200_000)
def _product_sorted(factors: tuple[Key, ...]) -> Key:
    P = factors[0]
    for K in factors[1:]:
        P = product(P, K)
    return _key(P)


def _check_capacity(n: int, bound: int) -> None:
    if n > bound:
        raise CapacityError(f"ground set size {n} exceeds {bound}")


def canonical_restrictions(D: SetSystem) -> list[Key]:
    """Canonical restriction of D to every subset, indexed by subset mask."""
    _check_capacity(D.n, MAX_CANONICAL_N)
    return list(_restrictions_cached(D.n, D.feasible))


@lru_cache(maxsize=4096)
def _restrictions_cached(n: int, feasible: tuple[int, ...]) -> tuple[Key, ...]:
    D = DeltaMatroid.trusted(n, feasible)
    return tuple(_key(restrict(D, sub)) for sub in range(1 << n))


def coproduct(D: SetSystem) -> TensorCombination:
    """Sum over E' of ``D|E' ⊗ D|(E \\ E')``."""
    res = canonical_restrictions(D)
    full = (1 << D.n) - 1
    out = defaultdict(int)
    for sub in range(1 << D.n):
        out[(res[sub], res[full ^ sub])] += 1
    return TensorCombination(dict(out))


def coproduct_of(c: DmCombination) -> TensorCombination:
    out = TensorCombination()
    for K, coeff in c.terms.items():
        out = out + coproduct(K).scale(coeff)
    return out


def is_primitive(c: DmCombination) -> bool:
    rest = coproduct_of(c) - tensor(ONE, c) - tensor(c, ONE)
    return rest.is_zero()


def set_partitions(n: int) -> Iterator[list[int]]:
    """Partitions of ``{1..n}`` into nonempty blocks, as lists of block masks.

    Generated in restricted-growth-string order: element i goes to a block
    index at most one more than the largest index used so far.
    """
    if n == 0:
        yield []
        return
    rgs = [0] * n

    def blocks(k: int) -> list[int]:
        out = [0] * k
        for i, g in enumerate(rgs):
            out[g] |= 1 << i
        return out

    def rec(i: int, top: int):
        if i == n:
            yield blocks(top + 1)
            return
        for g in range(top + 2):
            rgs[i] = g
            yield from rec(i + 1, max(top, g))

    yield from rec(1, 0)


def partition_coefficient(k: int) -> int:
    """``(-1)^(k-1) (k-1)!``."""
    return (-1) ** (k - 1) * factorial(k - 1)


def project_primitive(D: SetSystem) -> DmCombination:
    """Alternating factorial-weighted sum over set partitions of products of restrictions."""
    _check_capacity(D.n, min(MAX_PROJECT_N, MAX_CANONICAL_N))
    res = canonical_restrictions(D)
    out: dict[Key, int] = defaultdict(int)
    for blocks in set_partitions(D.n):
        out[product_key(tuple(res[b] for b in blocks))] += partition_coefficient(len(blocks))
    return DmCombination(dict(out), D.n)


def project_combination(c: DmCombination) -> DmCombination:
    out = DmCombination.zero(c.grade)
    for K, coeff in c.terms.items():
        out = out + project_primitive(K).scale(coeff)
    return out


def q_of_combination(c: DmCombination) -> IntPolynomial:
    out = IntPolynomial()
    for K, coeff in c.terms.items():
        out = out + interlace_poly(K).scale(coeff)
    return out


def telescoping_combination(D: SetSystem) -> DmCombination:
    """``Σ (-1)^(k-1)(k-1)! D|(E1-1) D|E2 ... D|Ek`` over partitions, 1 in E1.

    This vanishes for every D on at least two elements.
    """
    if D.n < 1:
        raise DeltaMatroidError("needs a nonempty ground set")
    res = canonical_restrictions(D)
    out: dict[Key, int] = defaultdict(int)
    for blocks in set_partitions(D.n):
        # restricted growth strings put element 1 in the first block
        first = blocks[0] & ~1
        factors = (res[first],) + tuple(res[b] for b in blocks[1:])
        out[product_key(factors)] += partition_coefficient(len(blocks))
    return DmCombination(dict(out), D.n - 1)


# ---------- the witness families


def all_ones(n: int) -> DeltaMatroid:
    if n < 1:
        raise DeltaMatroidError("all-ones family needs n >= 1")
    return matrix_delta_matroid(Gf2SymMatrix.ones(n))


def tower_matrix(n: int, k: int) -> Gf2SymMatrix:
    if n < 2 or k < 0:
        raise DeltaMatroidError("tower needs base size >= 2 and k >= 0")
    A = Gf2SymMatrix.ones(n)
    for _ in range(k):
        A = extend_matrix(A)
    return A


def tower(n: int, k: int) -> DeltaMatroid:
    """``D_n^[k]``: extend the all-ones n x n matrix k times."""
    return matrix_delta_matroid(tower_matrix(n, k))


def complete(n: int) -> DeltaMatroid:
    if n < 1:
        raise DeltaMatroidError("complete graph family needs n >= 1")
    return graph_delta_matroid(SimpleGraph.complete(n))


def build_family(kind: str, n: int, k: int = 0) -> DeltaMatroid:
    kind = kind.lower()
    if kind in ("allones", "all-ones", "ones"):
        return all_ones(n)
    if kind == "tower":
        return tower(n, k)
    if kind == "complete":
        return complete(n)
    raise DeltaMatroidError(f"unknown family {kind!r}")


def theorem5_polynomials(n: int) -> list[IntPolynomial]:
    """Interlace values on the projections of ``D_n, D_{n-1}^[1], ..., D_2^[n-2], M_{K_n}``."""
    if n < 2:
        raise DeltaMatroidError("needs n >= 2")
    _check_capacity(n, min(MAX_PROJECT_N, MAX_CANONICAL_N))
    dms = [tower(n - k, k) for k in range(n - 1)] + [complete(n)]
    return [q_of_combination(project_primitive(D)) for D in dms]


def coefficient_matrix(polys: Iterable[IntPolynomial], width: int) -> list[list[int]]:
    return [[p.coeff(d) for d in range(width)] for p in polys]


def theorem5_matrix(n: int) -> tuple[list[list[int]], int]:
    """Coefficient matrix (rows = polynomials, columns = degrees 0..n) and its rank over Q."""
    import sympy

    rows = coefficient_matrix(theorem5_polynomials(n), n + 1)
    return rows, int(sympy.Matrix(rows).rank())


def lemma1_sides(A: Gf2SymMatrix) -> tuple[IntPolynomial, IntPolynomial]:
    """``q(M_A')`` and ``q(M_A) + (x+1) q(M_A \\ 1)``."""
    from .core import delete
    from .polynomial import ONE, X

    D = matrix_delta_matroid(A)
    lhs = interlace_poly(matrix_delta_matroid(extend_matrix(A)))
    return lhs, interlace_poly(D) + (X + ONE) * interlace_poly(delete(D, 1))


def lemma3_sides(A: Gf2SymMatrix) -> tuple[IntPolynomial, IntPolynomial]:
    """``q(π(M_A'))`` and ``-x q(π(M_A))``."""
    from .polynomial import X

    D = matrix_delta_matroid(A)
    D2 = matrix_delta_matroid(extend_matrix(A))
    lhs = q_of_combination(project_primitive(D2))
    return lhs, -(X * q_of_combination(project_primitive(D)))
