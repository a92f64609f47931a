"""Exact integer polynomials and the interlace polynomial of a delta-matroid."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .core import (
    MAX_N,
    CapacityError,
    DeltaMatroid,
    ElementClass,
    SetSystem,
    classify,
    delete,
    distance_profile,
    popcount,
    twist,
)

COEFF_LIMIT = 1 << 63


class CoefficientOverflow(OverflowError):
    pass


def _normalize(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = [int(v) for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    for v in c:
        if not -COEFF_LIMIT <= v < COEFF_LIMIT:
            raise CoefficientOverflow(f"coefficient {v} does not fit in a signed 64-bit word")
    return tuple(c)


@dataclass(frozen=True)
class IntPolynomial:
    """Dense coefficients, lowest degree first, no trailing zeros."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _normalize(self.coeffs))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPolynomial":
        return cls((0,) * degree + (coeff,))

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        m = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self.coeff(k) + other.coeff(k) for k in range(m))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def scale(self, k: int) -> "IntPolynomial":
        return IntPolynomial(k * c for c in self.coeffs)

    def __pow__(self, e: int) -> "IntPolynomial":
        out = IntPolynomial((1,))
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, c: int) -> "IntPolynomial":
        return shift_variable(self, c)

    def __str__(self):
        return render(self)


X = IntPolynomial((0, 1))
ONE = IntPolynomial((1,))
ZERO = IntPolynomial()


def poly_arith(p: IntPolynomial, q: IntPolynomial | None, op: str, k: int = 1) -> IntPolynomial:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        return p.scale(k)
    raise ValueError(f"unknown polynomial operation {op!r}")


def shift_variable(p: IntPolynomial, c: int) -> IntPolynomial:
    """``p(x + c)`` by binomial expansion."""
    out = [0] * len(p.coeffs)
    for k, a in enumerate(p.coeffs):
        for j in range(k + 1):
            out[j] += a * comb(k, j) * c ** (k - j)
    return IntPolynomial(out)


def render(p: IntPolynomial) -> str:
    """Lowest degree first, e.g. ``2 - 3x + x^2``."""
    if not p.coeffs:
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            var = "x" if k == 1 else f"x^{k}"
            body = var if mag == 1 else f"{mag}{var}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def parse_coeffs(coeffs: Sequence[int]) -> IntPolynomial:
    return IntPolynomial(tuple(coeffs))


def interlace_poly(D: SetSystem) -> IntPolynomial:
    """Sum of ``x^d(φ)`` over all subsets φ of the ground set."""
    if D.n > MAX_N:
        raise CapacityError(f"n={D.n} exceeds {MAX_N}")
    return _interlace_cached(D.n, D.feasible)


@lru_cache(maxsize=100_000)
def _interlace_cached(n: int, feasible: tuple[int, ...]) -> IntPolynomial:
    counts = [0] * (n + 1)
    for d in distance_profile(SetSystem(n, feasible)):
        counts[d] += 1
    return IntPolynomial(counts)


def interlace_poly_bruteforce(D: SetSystem) -> IntPolynomial:
    """Literal double loop over subsets and feasible sets."""
    counts = [0] * (D.n + 1)
    for phi in range(1 << D.n):
        counts[min(popcount(F ^ phi) for F in D.feasible)] += 1
    return IntPolynomial(counts)


def first_ordinary(D: SetSystem) -> int | None:
    for e in range(1, D.n + 1):
        if classify(D, e) is ElementClass.ORDINARY:
            return e
    return None


def interlace_poly_recursive(D: DeltaMatroid) -> IntPolynomial:
    """Delete/twist recursion on the least ordinary element.

    When every element is a loop or coloop the direct sum is used.
    """
    e = first_ordinary(D)
    if e is None:
        return interlace_poly(D)
    return interlace_poly_recursive(delete(D, e)) + interlace_poly_recursive(
        delete(twist(D, 1 << (e - 1)), e)
    )


def recursion_terms(D: DeltaMatroid, X: int, e: int) -> tuple[IntPolynomial, IntPolynomial]:
    """``(q(D), q(D \\ e) + q(D*X \\ e))`` for the twisted form of the recursion."""
    return interlace_poly(D), interlace_poly(delete(D, e)) + interlace_poly(delete(twist(D, X), e))
