"""The two Vassiliev moves on set systems and the 4-term relation.

Moves are defined on arbitrary set systems; only binary inputs are promised
to stay delta-matroids, so results are plain :class:`SetSystem` values unless
the caller asks for validation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import (
    CapacityError,
    DeltaMatroid,
    DeltaMatroidError,
    SetSystem,
    _perm_tables,
    canonical,
    distance_profile,
    exchange_counterexample,
    twist,
)
from .gf2 import Gf2SymMatrix, binary_universe, matrix_delta_matroid
from .polynomial import IntPolynomial, interlace_poly


def _bits(D: SetSystem, a: int, b: int) -> tuple[int, int]:
    for e in (a, b):
        if not 1 <= e <= D.n:
            raise DeltaMatroidError(f"element {e} out of range 1..{D.n}")
    if a == b:
        raise DeltaMatroidError("moves need two distinct elements")
    return 1 << (a - 1), 1 << (b - 1)


def handle_slide(D: SetSystem, a: int, b: int) -> SetSystem:
    """Slide handle a over b: toggle ``X+a`` for every feasible ``X+b`` with X avoiding a, b."""
    abit, bbit = _bits(D, a, b)
    toggles = {F ^ bbit ^ abit for F in D.feasible if F & (abit | bbit) == bbit}
    return SetSystem(D.n, tuple(set(D.feasible) ^ toggles))


def exchange_ends(D: SetSystem, a: int, b: int) -> SetSystem:
    """Exchange the ends of handles a and b: toggle ``X+a+b`` for every feasible X avoiding a, b."""
    abit, bbit = _bits(D, a, b)
    both = abit | bbit
    toggles = {F | both for F in D.feasible if not F & both}
    return SetSystem(D.n, tuple(set(D.feasible) ^ toggles))


@dataclass(frozen=True)
class FourTermQuadruple:
    base: SetSystem
    exchanged: SetSystem
    slid: SetSystem
    both: SetSystem

    def members(self) -> tuple[SetSystem, SetSystem, SetSystem, SetSystem]:
        return self.base, self.exchanged, self.slid, self.both


def four_term_quadruple(D: SetSystem, a: int, b: int) -> FourTermQuadruple:
    exchanged = exchange_ends(D, a, b)
    slid = handle_slide(D, a, b)
    both = exchange_ends(slid, a, b)
    if both != handle_slide(exchanged, a, b):
        raise AssertionError(f"moves do not commute on {D} at ({a},{b})")
    return FourTermQuadruple(SetSystem(D.n, D.feasible), exchanged, slid, both)


class InvalidQuadrupleError(DeltaMatroidError):
    pass


def _check_members(quad: FourTermQuadruple) -> None:
    for name, S in zip(("base", "exchanged", "slid", "both"), quad.members()):
        cex = exchange_counterexample(S)
        if cex is not None:
            raise InvalidQuadrupleError(f"{name} member {S} is not a delta-matroid: {cex}")


def four_term_defect(D: SetSystem, a: int, b: int, check: bool = True) -> IntPolynomial:
    """``q(D) - q(D'_ab) - q(D~_ab) + q(D~'_ab)``."""
    quad = four_term_quadruple(D, a, b)
    if check:
        _check_members(quad)
    q0, q1, q2, q3 = (interlace_poly(S) for S in quad.members())
    return q0 - q1 - q2 + q3


def distance_case(d: tuple[int, int, int, int]) -> str | None:
    """Which equality pattern the four distances follow.

    ``"all"``: all equal; ``"exchange"``: ``d0 == d1`` and ``d2 == d3``;
    ``"slide"``: ``d0 == d2`` and ``d1 == d3``. None means the pointwise
    4-term identity fails for this subset.
    """
    d0, d1, d2, d3 = d
    if d0 == d1 == d2 == d3:
        return "all"
    if d0 == d1 and d2 == d3:
        return "exchange"
    if d0 == d2 and d1 == d3:
        return "slide"
    return None


def pointwise_failures(D: SetSystem, a: int, b: int) -> list[tuple[int, tuple[int, int, int, int]]]:
    """Subsets φ where ``x^d0 - x^d1 - x^d2 + x^d3 != 0``, with their distances."""
    quad = four_term_quadruple(D, a, b)
    profiles = [distance_profile(S) for S in quad.members()]
    bad = []
    for phi, d in enumerate(zip(*profiles)):
        if distance_case(d) is None:
            bad.append((phi, d))
    return bad


def case_counts(D: SetSystem, a: int, b: int) -> dict[str, int]:
    quad = four_term_quadruple(D, a, b)
    profiles = [distance_profile(S) for S in quad.members()]
    out = {"all": 0, "exchange": 0, "slide": 0, "fail": 0}
    for d in zip(*profiles):
        out[distance_case(d) or "fail"] += 1
    return out


def ordered_pairs(n: int):
    return [(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b]


@dataclass
class FourTermReport:
    checked: int = 0
    pairs: int = 0
    failures: list = None

    def __post_init__(self):
        if self.failures is None:
            self.failures = []

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        return f"checked={self.checked} pairs={self.pairs} failures={len(self.failures)}"


def check_four_term(instances, pointwise: bool = True, validate_members: bool = False) -> FourTermReport:
    """Run the 4-term relation over every ordered pair of every instance."""
    report = FourTermReport()
    for D in instances:
        report.checked += 1
        for a, b in ordered_pairs(D.n):
            report.pairs += 1
            defect = four_term_defect(D, a, b, check=validate_members)
            bad = pointwise_failures(D, a, b) if pointwise else []
            if not defect.is_zero() or bad:
                report.failures.append((D, a, b, defect, bad))
    return report


def _indicator_to_family(ind: int) -> tuple[int, ...]:
    out = []
    X = 0
    while ind:
        if ind & 1:
            out.append(X)
        ind >>= 1
        X += 1
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_binary(n: int) -> tuple[DeltaMatroid, ...]:
    """Canonical representatives of all binary delta-matroids on n elements.

    The labeled universe is built from every symmetric matrix and every twist
    and then reduced modulo relabeling; output is sorted by feasible sequence.
    """
    if n > 5:
        raise CapacityError("binary enumeration supports n <= 5")
    labeled = sorted(binary_universe(n))
    if n <= 1:
        reps = {_indicator_to_family(v) for v in labeled}
        return tuple(DeltaMatroid.trusted(n, f) for f in sorted(reps, key=lambda f: (len(f), f)))
    # lex-least sorted feasible sequence among equal-size families is the one
    # whose least element of the symmetric difference is present, i.e. the
    # largest indicator when subset X carries weight 2^(2^n - 1 - X)
    size = 1 << n
    _, table = _perm_tables(n)
    ind = np.array(labeled, dtype=np.uint64)
    bits = ((ind[:, None] >> np.arange(size, dtype=np.uint64)) & np.uint64(1)).astype(bool)
    rev_weights = np.uint64(1) << (np.uint64(size - 1) - np.arange(size, dtype=np.uint64))
    best = np.zeros(len(ind), dtype=np.uint64)
    for row in table.astype(np.int64):
        moved = np.zeros_like(bits)
        moved[:, row] = bits
        best = np.maximum(best, moved.astype(np.uint64) @ rev_weights)
    reps = set()
    for v in np.unique(best):
        v = int(v)
        reps.add(tuple(X for X in range(size) if v >> (size - 1 - X) & 1))
    return tuple(DeltaMatroid.trusted(n, f) for f in sorted(reps, key=lambda f: (len(f), f)))


def random_binary(n: int, rng: random.Random) -> DeltaMatroid:
    """Uniform random symmetric matrix, then a uniform random twist."""
    rows = [0] * n
    for i in range(n):
        for j in range(i, n):
            if rng.getrandbits(1):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    M = matrix_delta_matroid(Gf2SymMatrix(n, tuple(rows)))
    return twist(M, rng.getrandbits(n) if n else 0)


def canonical_key(D: SetSystem) -> tuple[int, tuple[int, ...]]:
    C = canonical(D)
    return C.n, C.feasible
