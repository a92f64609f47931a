"""Simple graphs, pivots and the recursive graph interlace polynomial."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .core import MAX_CANONICAL_N, MAX_N, CapacityError, DeltaMatroid, DeltaMatroidError, squeeze
from .gf2 import Gf2SymMatrix, matrix_delta_matroid
from .polynomial import IntPolynomial


@dataclass(frozen=True)
class SimpleGraph:
    """Loopless graph on vertices ``1..n``; ``adj[i]`` is the neighbour mask of vertex i+1."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        adj = tuple(self.adj)
        object.__setattr__(self, "adj", adj)
        if len(adj) != self.n:
            raise DeltaMatroidError(f"expected {self.n} adjacency rows, got {len(adj)}")
        if self.n > MAX_N:
            raise CapacityError(f"n={self.n} exceeds {MAX_N}")
        for i, row in enumerate(adj):
            if row >> i & 1:
                raise DeltaMatroidError(f"loop at vertex {i + 1}")
            if row < 0 or row >> self.n:
                raise DeltaMatroidError(f"vertex {i + 1} has neighbours out of range")
            for j in range(self.n):
                if (row >> j & 1) != (adj[j] >> i & 1):
                    raise DeltaMatroidError(f"adjacency not symmetric at {i + 1},{j + 1}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        adj = [0] * n
        for a, b in edges:
            if not (1 <= a <= n and 1 <= b <= n):
                raise DeltaMatroidError(f"edge {a}-{b} out of range 1..{n}")
            if a == b:
                raise DeltaMatroidError(f"loop at vertex {a}")
            adj[a - 1] |= 1 << (b - 1)
            adj[b - 1] |= 1 << (a - 1)
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> "SimpleGraph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << i) for i in range(n)))

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adj[a - 1] >> (b - 1) & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [
            (i + 1, j + 1)
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if self.adj[i] >> j & 1
        ]

    def adjacency_matrix(self) -> Gf2SymMatrix:
        return Gf2SymMatrix(self.n, self.adj)

    def toggle(self, a: int, b: int) -> "SimpleGraph":
        adj = list(self.adj)
        adj[a - 1] ^= 1 << (b - 1)
        adj[b - 1] ^= 1 << (a - 1)
        return SimpleGraph(self.n, tuple(adj))

    def delete_vertex(self, v: int) -> "SimpleGraph":
        keep = ((1 << self.n) - 1) ^ (1 << (v - 1))
        return SimpleGraph(
            self.n - 1, tuple(squeeze(row, keep) for i, row in enumerate(self.adj) if i != v - 1)
        )

    def disjoint_union(self, other: "SimpleGraph") -> "SimpleGraph":
        s = self.n
        return SimpleGraph(self.n + other.n, self.adj + tuple(r << s for r in other.adj))


def _check_pair(G: SimpleGraph, a: int, b: int) -> None:
    for v in (a, b):
        if not 1 <= v <= G.n:
            raise DeltaMatroidError(f"vertex {v} out of range 1..{G.n}")
    if a == b:
        raise DeltaMatroidError("the two vertices must be distinct")


def pivot(G: SimpleGraph, a: int, b: int) -> SimpleGraph:
    """``G^{ab}``: toggle every pair of vertices lying in different classes 1-3.

    Class 1 sees a only, class 2 sees b only, class 3 sees both; edges at a or
    b and anything touching class 4 are left alone.
    """
    _check_pair(G, a, b)
    if not G.has_edge(a, b):
        raise DeltaMatroidError(f"pivot needs an edge, {a}-{b} is not one")
    ends = 1 << (a - 1) | 1 << (b - 1)
    na = G.adj[a - 1] & ~ends
    nb = G.adj[b - 1] & ~ends
    classes = (na & ~nb, nb & ~na, na & nb)
    adj = list(G.adj)
    for i in range(G.n):
        bit = 1 << i
        for k, cls in enumerate(classes):
            if cls & bit:
                adj[i] ^= classes[(k + 1) % 3] | classes[(k + 2) % 3]
    return SimpleGraph(G.n, tuple(adj))


def graph_interlace(G: SimpleGraph, order: list[tuple[int, int]] | None = None) -> IntPolynomial:
    """Interlace polynomial by pivot recursion on the lexicographically least edge.

    ``order`` overrides the edge choice at the top level only (each listed edge
    is tried in turn until one exists); used to check order independence.
    """
    if order:
        for a, b in order:
            if G.has_edge(a, b):
                return graph_interlace(G.delete_vertex(a)) + graph_interlace(
                    pivot(G, a, b).delete_vertex(b)
                )
    return _graph_interlace(G.n, G.adj)


@lru_cache(maxsize=200_000)
def _graph_interlace(n: int, adj: tuple[int, ...]) -> IntPolynomial:
    G = SimpleGraph(n, adj)
    for i, row in enumerate(adj):
        if row:
            a = i + 1
            b = (row & -row).bit_length()
            left = G.delete_vertex(a)
            right = pivot(G, a, b).delete_vertex(b)
            return _graph_interlace(left.n, left.adj) + _graph_interlace(right.n, right.adj)
    return IntPolynomial.monomial(n)


def graph_interlace_any_edge(G: SimpleGraph, a: int, b: int) -> IntPolynomial:
    """Recursion with edge ``ab`` as the first step."""
    return graph_interlace(G, order=[(a, b)])


def graph_delta_matroid(G: SimpleGraph) -> DeltaMatroid:
    return matrix_delta_matroid(G.adjacency_matrix())


def exchange_adjacency(G: SimpleGraph, a: int, b: int) -> SimpleGraph:
    """``G'_ab``: toggle the edge ab."""
    _check_pair(G, a, b)
    return G.toggle(a, b)


def slide_neighbourhood(G: SimpleGraph, a: int, b: int) -> SimpleGraph:
    """``G~_ab``: toggle c-a for every neighbour c != a of b."""
    _check_pair(G, a, b)
    nb = G.adj[b - 1] & ~(1 << (a - 1))
    adj = list(G.adj)
    adj[a - 1] ^= nb
    for c in range(G.n):
        if nb >> c & 1:
            adj[c] ^= 1 << (a - 1)
    return SimpleGraph(G.n, tuple(adj))


def graph_moves(G: SimpleGraph, a: int, b: int) -> tuple[SimpleGraph, SimpleGraph, SimpleGraph]:
    exchanged = exchange_adjacency(G, a, b)
    slid = slide_neighbourhood(G, a, b)
    both = exchange_adjacency(slid, a, b)
    if both != slide_neighbourhood(exchanged, a, b):
        raise AssertionError(f"graph moves failed to commute at ({a},{b})")
    return exchanged, slid, both


def graph_four_term_defect(G: SimpleGraph, a: int, b: int) -> IntPolynomial:
    exchanged, slid, both = graph_moves(G, a, b)
    q = graph_interlace
    return q(G) - q(exchanged) - q(slid) + q(both)


def all_graphs(n: int):
    """Every labeled simple graph on n vertices."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for bits in range(1 << len(pairs)):
        yield SimpleGraph.from_edges(n, (p for k, p in enumerate(pairs) if bits >> k & 1))


def canonical_graph(G: SimpleGraph) -> tuple[int, ...]:
    """Least adjacency tuple over all vertex relabelings."""
    if G.n > MAX_CANONICAL_N:
        raise CapacityError(f"graph canonicalization supports n <= {MAX_CANONICAL_N}")
    best = None
    for perm in itertools.permutations(range(G.n)):
        adj = [0] * G.n
        for i, row in enumerate(G.adj):
            m = 0
            for j in range(G.n):
                if row >> j & 1:
                    m |= 1 << perm[j]
            adj[perm[i]] = m
        key = tuple(adj)
        if best is None or key < best:
            best = key
    return best if best is not None else ()


def random_graph(n: int, rng, p: float = 0.5) -> SimpleGraph:
    return SimpleGraph.from_edges(
        n, [(i, j) for i, j in itertools.combinations(range(1, n + 1), 2) if rng.random() < p]
    )
