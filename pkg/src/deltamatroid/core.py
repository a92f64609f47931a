"""Set systems, the symmetric exchange axiom and the elementary operations.

Elements of the ground set are labeled ``1..n``; a subset is an ``n``-bit
integer with bit ``i - 1`` set when element ``i`` belongs to it.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

MAX_N = 16
MAX_CANONICAL_N = 8


class DeltaMatroidError(ValueError):
    """Base class for invalid inputs to the toolkit."""


class ImproperSetSystemError(DeltaMatroidError):
    pass


class NotADeltaMatroidError(DeltaMatroidError):
    def __init__(self, counterexample: tuple[int, int, int]):
        X, Y, x = counterexample
        super().__init__(
            f"symmetric exchange fails for X={set_to_str(X)}, Y={set_to_str(Y)}, x={x}"
        )
        self.counterexample = counterexample


class CapacityError(DeltaMatroidError):
    pass


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def elements(mask: int) -> list[int]:
    """1-based labels of the elements of ``mask`` in increasing order."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(elems: Iterable[int]) -> int:
    m = 0
    for e in elems:
        if e < 1:
            raise DeltaMatroidError(f"element labels start at 1, got {e}")
        m |= 1 << (e - 1)
    return m


def set_to_str(mask: int) -> str:
    return "{" + ",".join(map(str, elements(mask))) + "}"


def _check_subset(n: int, X: int) -> None:
    if X < 0 or X >> n:
        raise DeltaMatroidError(f"subset mask {X} out of range for n={n}")


def _check_element(n: int, e: int) -> None:
    if not 1 <= e <= n:
        raise DeltaMatroidError(f"element {e} out of range 1..{n}")


@dataclass(frozen=True)
class SetSystem:
    """A proper set system on ``{1..n}`` with feasible sets stored as sorted masks."""

    n: int
    feasible: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_N:
            raise CapacityError(f"ground set size {self.n} outside 0..{MAX_N}")
        fam = tuple(sorted(set(self.feasible)))
        if not fam:
            raise ImproperSetSystemError("feasible family is empty")
        if fam[0] < 0 or fam[-1] >> self.n:
            raise DeltaMatroidError(f"feasible mask out of range for n={self.n}")
        object.__setattr__(self, "feasible", fam)

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]):
        return cls(n, tuple(mask_of(s) for s in sets))

    @property
    def ground(self) -> int:
        return (1 << self.n) - 1

    def is_feasible(self, X: int) -> bool:
        return X in self._feasible_set

    @property
    def _feasible_set(self) -> frozenset[int]:
        # cached lazily; frozen dataclass so go through object.__setattr__
        try:
            return self.__dict__["_fset"]
        except KeyError:
            fs = frozenset(self.feasible)
            object.__setattr__(self, "_fset", fs)
            return fs

    def sets(self) -> list[list[int]]:
        return [elements(F) for F in self.feasible]

    def __str__(self):
        ground = ",".join(map(str, range(1, self.n + 1)))
        fam = ",".join(set_to_str(F) for F in self.feasible)
        return f"({{{ground}}}, {{{fam}}})"

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, feasible={self.feasible})"

    # equality ignores the concrete class so that a DeltaMatroid equals the
    # SetSystem with the same family
    def __eq__(self, other):
        if not isinstance(other, SetSystem):
            return NotImplemented
        return self.n == other.n and self.feasible == other.feasible

    def __hash__(self):
        return hash((self.n, self.feasible))


class DeltaMatroid(SetSystem):
    """A set system that satisfied the symmetric exchange axiom when built.

    Construction validates; operations that are known to preserve the axiom
    build their results through :meth:`trusted` and skip the check.
    """

    def __post_init__(self):
        super().__post_init__()
        if not self.__dict__.get("_trusted", False):
            cex = exchange_counterexample(self)
            if cex is not None:
                raise NotADeltaMatroidError(cex)

    @classmethod
    def trusted(cls, n: int, feasible: Iterable[int]) -> "DeltaMatroid":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "feasible", tuple(feasible))
        object.__setattr__(obj, "_trusted", True)
        obj.__post_init__()
        return obj

    @classmethod
    def of(cls, S: SetSystem) -> "DeltaMatroid":
        if isinstance(S, DeltaMatroid):
            return S
        return cls(S.n, S.feasible)


class ElementClass(enum.Enum):
    LOOP = "loop"
    COLOOP = "coloop"
    ORDINARY = "ordinary"


def exchange_counterexample(S: SetSystem) -> tuple[int, int, int] | None:
    """Return ``(X, Y, x)`` violating symmetric exchange, or None.

    ``y = x`` is allowed as the exchanged partner, i.e. ``{x} Δ X`` feasible
    is enough.
    """
    fs = S._feasible_set
    fam = S.feasible
    for X in fam:
        for Y in fam:
            diff = X ^ Y
            d = diff
            while d:
                xbit = d & -d
                d ^= xbit
                Xx = X ^ xbit
                if Xx in fs:
                    continue
                e = diff ^ xbit
                while e:
                    ybit = e & -e
                    if Xx ^ ybit in fs:
                        break
                    e ^= ybit
                else:
                    return X, Y, xbit.bit_length()
    return None


def validate(S: SetSystem) -> tuple[int, int, int] | None:
    """None if ``S`` is a delta-matroid, else a counterexample ``(X, Y, x)``."""
    if not S.feasible:
        raise ImproperSetSystemError("feasible family is empty")
    return exchange_counterexample(S)


def is_delta_matroid(S: SetSystem) -> bool:
    return exchange_counterexample(S) is None


def _rebuild(S: SetSystem, n: int, feasible: Iterable[int]) -> SetSystem:
    if isinstance(S, DeltaMatroid):
        return DeltaMatroid.trusted(n, feasible)
    return SetSystem(n, tuple(feasible))


def twist(D: SetSystem, X: int) -> SetSystem:
    """``D * X``: replace every feasible set F by ``F Δ X``."""
    _check_subset(D.n, X)
    return _rebuild(D, D.n, (F ^ X for F in D.feasible))


def classify(D: SetSystem, e: int) -> ElementClass:
    _check_element(D.n, e)
    bit = 1 << (e - 1)
    inside = sum(1 for F in D.feasible if F & bit)
    if inside == 0:
        return ElementClass.LOOP
    if inside == len(D.feasible):
        return ElementClass.COLOOP
    return ElementClass.ORDINARY


def squeeze(mask: int, keep: int) -> int:
    """Pack the bits of ``mask`` lying in ``keep`` into consecutive low bits."""
    out = 0
    j = 0
    while keep:
        low = keep & -keep
        if mask & low:
            out |= 1 << j
        j += 1
        keep ^= low
    return out


def _reduce_family(fam: Iterable[int], bit: int, contract: bool) -> list[int]:
    fam = list(fam)
    has = [F for F in fam if F & bit]
    if contract:
        # contraction of a loop is deletion
        return [F ^ bit for F in has] if has else fam
    # deletion of a coloop is contraction
    if len(has) == len(fam):
        return [F ^ bit for F in has]
    return [F for F in fam if not F & bit]


def delete(D: SetSystem, e: int) -> SetSystem:
    return reduce(D, e, "delete")


def contract(D: SetSystem, e: int) -> SetSystem:
    return reduce(D, e, "contract")


def reduce(D: SetSystem, e: int, mode: str) -> SetSystem:
    """Delete or contract element ``e``; remaining elements are relabeled 1..n-1."""
    if D.n == 0:
        raise DeltaMatroidError("cannot reduce a set system on an empty ground set")
    _check_element(D.n, e)
    if mode not in ("delete", "contract"):
        raise DeltaMatroidError(f"unknown reduction mode {mode!r}")
    bit = 1 << (e - 1)
    fam = _reduce_family(D.feasible, bit, mode == "contract")
    keep = D.ground ^ bit
    return _rebuild(D, D.n - 1, (squeeze(F, keep) for F in fam))


def restrict(D: SetSystem, sub: int) -> SetSystem:
    """Restriction to ``sub``: delete every element outside it (coloops get contracted)."""
    _check_subset(D.n, sub)
    fam = D.feasible
    rest = D.ground & ~sub
    while rest:
        bit = rest & -rest
        rest ^= bit
        fam = _reduce_family(fam, bit, contract=False)
    return _rebuild(D, popcount(sub), sorted({squeeze(F, sub) for F in fam}))


def product(D1: SetSystem, D2: SetSystem) -> SetSystem:
    """Disjoint union; the elements of ``D2`` are shifted up by ``D1.n``."""
    n = D1.n + D2.n
    if n > MAX_N:
        raise CapacityError(f"product ground set size {n} exceeds {MAX_N}")
    s = D1.n
    fam = [F1 | (F2 << s) for F2 in D2.feasible for F1 in D1.feasible]
    if isinstance(D1, DeltaMatroid) and isinstance(D2, DeltaMatroid):
        return DeltaMatroid.trusted(n, fam)
    return SetSystem(n, tuple(fam))


UNIT = DeltaMatroid.trusted(0, (0,))


def distance(D: SetSystem, X: int) -> int:
    """``min |F Δ X|`` over feasible F."""
    _check_subset(D.n, X)
    return min(popcount(F ^ X) for F in D.feasible)


def distance_profile(D: SetSystem) -> list[int]:
    """Distances from every subset ``0 .. 2^n - 1`` to the feasible family.

    Hamming distance separates over coordinates, so one relaxation sweep per
    coordinate of the hypercube gives the exact minimum.
    """
    size = 1 << D.n
    big = D.n + 1
    dist = [big] * size
    for F in D.feasible:
        dist[F] = 0
    for b in range(D.n):
        bit = 1 << b
        for X in range(size):
            if X & bit:
                a, c = dist[X], dist[X ^ bit]
                if a + 1 < c:
                    dist[X ^ bit] = a + 1
                elif c + 1 < a:
                    dist[X] = c + 1
    return dist


# ---------- canonical forms


@lru_cache(maxsize=None)
def _perm_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All permutations of ``range(n)`` and their action on every mask."""
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    masks = np.arange(1 << n, dtype=np.int64)
    table = np.zeros((len(perms), 1 << n), dtype=np.int64)
    for i in range(n):
        bit = (masks >> i) & 1
        table |= bit[None, :] << perms[:, i][:, None]
    dtype = np.uint8 if n <= 8 else np.uint16
    return perms, table.astype(dtype)


def permute(S: SetSystem, perm: tuple[int, ...]) -> SetSystem:
    """Relabel element ``i`` as ``perm[i-1]`` (``perm`` is a 1-based image tuple)."""
    if sorted(perm) != list(range(1, S.n + 1)):
        raise DeltaMatroidError(f"{perm} is not a permutation of 1..{S.n}")
    out = []
    for F in S.feasible:
        m = 0
        for i, p in enumerate(perm):
            if F >> i & 1:
                m |= 1 << (p - 1)
        out.append(m)
    return _rebuild(S, S.n, out)


def canonicalize(S: SetSystem) -> tuple[SetSystem, tuple[int, ...]]:
    """Lexicographically least sorted feasible sequence over all relabelings.

    Returns the canonical set system and a permutation ``p`` (1-based image
    tuple) with ``permute(S, p) == canonical``.
    """
    if S.n > MAX_CANONICAL_N:
        raise CapacityError(f"canonicalization supports n <= {MAX_CANONICAL_N}, got {S.n}")
    fam, perm = _canonical_family(S.n, S.feasible)
    return _rebuild(S, S.n, fam), perm


@lru_cache(maxsize=200_000)
def _canonical_family(n: int, feasible: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if n <= 1:
        return feasible, tuple(range(1, n + 1))
    perms, table = _perm_tables(n)
    images = np.sort(table[:, np.asarray(feasible)], axis=1)
    rows = np.arange(len(perms))
    for col in range(images.shape[1]):
        vals = images[rows, col]
        rows = rows[vals == vals.min()]
        if len(rows) == 1:
            break
    best = int(rows[0])
    return (
        tuple(int(v) for v in images[best]),
        tuple(int(p) + 1 for p in perms[best]),
    )


def canonical(S: SetSystem) -> SetSystem:
    return canonicalize(S)[0]


def is_isomorphic(S1: SetSystem, S2: SetSystem) -> bool:
    if S1.n != S2.n or len(S1.feasible) != len(S2.feasible):
        return False
    return canonical(S1).feasible == canonical(S2).feasible
