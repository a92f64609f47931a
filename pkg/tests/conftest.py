import itertools

import pytest
from hypothesis import strategies as st

from deltamatroid.core import DeltaMatroid, SetSystem, is_delta_matroid
from deltamatroid.gf2 import Gf2SymMatrix, matrix_delta_matroid
from deltamatroid.core import twist


def sets(n, *fam):
    return SetSystem.from_sets(n, fam)


@st.composite
def symmetric_matrices(draw, min_n=0, max_n=5):
    n = draw(st.integers(min_n, max_n))
    rows = [0] * n
    for i in range(n):
        for j in range(i, n):
            if draw(st.booleans()):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Gf2SymMatrix(n, tuple(rows))


@st.composite
def binary_delta_matroids(draw, min_n=0, max_n=5):
    A = draw(symmetric_matrices(min_n, max_n))
    X = draw(st.integers(0, (1 << A.n) - 1))
    return twist(matrix_delta_matroid(A), X)


@st.composite
def set_systems(draw, min_n=0, max_n=4):
    n = draw(st.integers(min_n, max_n))
    fam = draw(st.sets(st.integers(0, (1 << n) - 1), min_size=1))
    return SetSystem(n, tuple(fam))


def all_set_systems(n):
    size = 1 << n
    for ind in range(1, 1 << size):
        yield SetSystem(n, tuple(X for X in range(size) if ind >> X & 1))


def all_delta_matroids(n):
    return [DeltaMatroid.of(S) for S in all_set_systems(n) if is_delta_matroid(S)]


@pytest.fixture(scope="session")
def dms_up_to_4():
    return {n: all_delta_matroids(n) for n in range(5)}


def brute_canonical(S):
    """Least sorted feasible tuple over every relabeling, straight from the definition."""
    best = None
    for perm in itertools.permutations(range(S.n)):
        fam = []
        for F in S.feasible:
            m = 0
            for i in range(S.n):
                if F >> i & 1:
                    m |= 1 << perm[i]
            fam.append(m)
        key = tuple(sorted(fam))
        if best is None or key < best:
            best = key
    return best if best is not None else S.feasible


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
