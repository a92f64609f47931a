"""Reproduction checks: each returns rows of computed-vs-expected values."""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import factorial

from .core import DeltaMatroid, SetSystem, is_delta_matroid
from .gf2 import Gf2SymMatrix
from .graphs import all_graphs, graph_delta_matroid, graph_four_term_defect, graph_interlace, random_graph
from .hopf import (
    all_ones,
    complete,
    lemma1_sides,
    lemma3_sides,
    project_primitive,
    q_of_combination,
    theorem5_matrix,
    tower,
    tower_matrix,
)
from .moves import check_four_term, enumerate_binary, ordered_pairs, random_binary
from .polynomial import interlace_poly, interlace_poly_recursive, shift_variable


@dataclass
class Row:
    item: str
    computed: str
    expected: str
    ok: bool


def render_table(rows: list[Row]) -> str:
    header = ("item", "computed", "expected", "status")
    cells = [header] + [(r.item, r.computed, r.expected, "pass" if r.ok else "FAIL") for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(4)]
    return "\n".join("  ".join(c[i].ljust(widths[i]) for i in range(4)).rstrip() for c in cells)


def random_symmetric(n: int, rng: random.Random) -> Gf2SymMatrix:
    rows = [0] * n
    for i in range(n):
        for j in range(i, n):
            if rng.getrandbits(1):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Gf2SymMatrix(n, tuple(rows))


def all_delta_matroids(n: int):
    """Every labeled delta-matroid on n elements, by filtering all proper set systems."""
    size = 1 << n
    for ind in range(1, 1 << size):
        S = SetSystem(n, tuple(X for X in range(size) if ind >> X & 1))
        if is_delta_matroid(S):
            yield DeltaMatroid.trusted(n, S.feasible)


def _agree(label: str, total: int, bad: int) -> Row:
    return Row(label, f"{total - bad}/{total} agree", f"{total}/{total}", bad == 0)


def theorem1(n_max: int = 5, random_count: int = 0, random_n: int = 6, seed: int = 0) -> list[Row]:
    rows = []
    for n in range(n_max + 1):
        graphs = list(all_graphs(n))
        bad = sum(
            graph_interlace(G) != shift_variable(interlace_poly(graph_delta_matroid(G)), -1)
            for G in graphs
        )
        rows.append(_agree(f"q(G,x) = qD(M_G,x-1), all graphs n={n}", len(graphs), bad))
    if random_count:
        rng = random.Random(seed)
        bad = 0
        for _ in range(random_count):
            G = random_graph(random_n, rng)
            bad += graph_interlace(G) != shift_variable(interlace_poly(graph_delta_matroid(G)), -1)
        rows.append(_agree(f"random graphs n={random_n} seed={seed}", random_count, bad))
    return rows


def theorem2(n_max: int = 4) -> list[Row]:
    rows = []
    for n in range(n_max + 1):
        dms = list(all_delta_matroids(n))
        bad = sum(interlace_poly_recursive(D) != interlace_poly(D) for D in dms)
        rows.append(_agree(f"recursive = direct, all delta-matroids n={n}", len(dms), bad))
    return rows


def theorem3(n_max: int = 5) -> list[Row]:
    rows = []
    for n in range(2, n_max + 1):
        total = bad = 0
        for G in all_graphs(n):
            for a, b in ordered_pairs(n):
                total += 1
                bad += not graph_four_term_defect(G, a, b).is_zero()
        rows.append(_agree(f"graph 4-term defect zero, n={n}", total, bad))
    return rows


def theorem4(n_max: int = 4, random_count: int = 0, random_n: int = 5, seed: int = 0) -> list[Row]:
    rows = []
    for n in range(2, n_max + 1):
        rep = check_four_term(enumerate_binary(n), pointwise=True)
        rows.append(_agree(f"binary universe n={n} ({rep.checked} classes)", rep.pairs, len(rep.failures)))
    if random_count:
        rng = random.Random(seed)
        rep = check_four_term((random_binary(random_n, rng) for _ in range(random_count)), pointwise=True)
        rows.append(_agree(f"random binary n={random_n} seed={seed}", rep.pairs, len(rep.failures)))
    return rows


def lemma1(n_max: int = 6, random_per_size: int = 200, seed: int = 0) -> list[Row]:
    rows = []
    for n in range(1, n_max + 1):
        lhs, rhs = lemma1_sides(Gf2SymMatrix.ones(n))
        rows.append(Row(f"all-ones n={n}", str(lhs), str(rhs), lhs == rhs))
    rng = random.Random(seed)
    for n in range(1, n_max + 1):
        bad = 0
        for _ in range(random_per_size):
            lhs, rhs = lemma1_sides(random_symmetric(n, rng))
            bad += lhs != rhs
        rows.append(_agree(f"random symmetric n={n}", random_per_size, bad))
    return rows


def lemma2(n_max: int = 7) -> list[Row]:
    rows = []
    for n in range(2, n_max + 1):
        c = q_of_combination(project_primitive(all_ones(n))).coeff(0)
        want = (-1) ** (n - 1) * factorial(n - 1)
        rows.append(Row(f"constant term of q(pi(D_{n}))", str(c), str(want), c == want))
    return rows


def lemma3(n_max: int = 7, random_per_size: int = 100, seed: int = 0) -> list[Row]:
    """Ground-set sizes of the extended matrix up to ``n_max``; base size >= 2."""
    rows = []
    for size in range(3, n_max + 1):
        # D' of ground size `size` comes from tower(b, k) with b + k + 1 == size
        for base in range(2, size):
            k = size - 1 - base
            lhs, rhs = lemma3_sides(tower_matrix(base, k))
            rows.append(Row(f"D_{base}^[{k}] -> D_{base}^[{k + 1}]", str(lhs), str(rhs), lhs == rhs))
    rng = random.Random(seed)
    for n in range(2, n_max):
        bad = 0
        for _ in range(random_per_size):
            lhs, rhs = lemma3_sides(random_symmetric(n, rng))
            bad += lhs != rhs
        rows.append(_agree(f"random M_A n={n} -> n={n + 1}", random_per_size, bad))
    return rows


def lemma4(n_max: int = 7) -> list[Row]:
    rows = []
    for n in range(2, n_max + 1):
        p = q_of_combination(project_primitive(complete(n)))
        want = (-1) ** (n - 1) * factorial(n - 1)
        rows.append(
            Row(f"deg, lead of q(pi(M_K{n}))", f"{p.degree}, {p.leading}", f"{n}, {want}",
                p.degree == n and p.leading == want)
        )
        for k in range(n - 1):
            d = q_of_combination(project_primitive(tower(n - k, k))).degree
            rows.append(Row(f"deg q(pi(D_{n - k}^[{k}]))", str(d), f"< {n}", d < n))
    return rows


def theorem5(n_max: int = 7) -> list[Row]:
    rows = []
    for n in range(2, n_max + 1):
        _, r = theorem5_matrix(n)
        rows.append(Row(f"rank of interlace values, degree {n}", str(r), str(n), r == n))
    return rows


TARGETS = {
    "theorem1": theorem1,
    "theorem2": theorem2,
    "theorem3": theorem3,
    "theorem4": theorem4,
    "lemma1": lemma1,
    "lemma2": lemma2,
    "lemma3": lemma3,
    "lemma4": lemma4,
    "theorem5": theorem5,
}
