import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deltamatroid.core import (
    UNIT,
    CapacityError,
    DeltaMatroid,
    DeltaMatroidError,
    ElementClass,
    ImproperSetSystemError,
    NotADeltaMatroidError,
    SetSystem,
    canonicalize,
    classify,
    contract,
    delete,
    distance,
    distance_profile,
    elements,
    is_delta_matroid,
    is_isomorphic,
    mask_of,
    permute,
    popcount,
    product,
    reduce,
    restrict,
    squeeze,
    twist,
    validate,
)

from conftest import all_set_systems, binary_delta_matroids, brute_canonical, set_systems, sets

GOOD = sets(3, [], [1], [1, 2], [2, 3], [1, 2, 3])
BAD = sets(3, [], [1, 2], [2, 3], [1, 2, 3])


def test_mask_helpers():
    assert mask_of([1, 3]) == 0b101
    assert elements(0b101) == [1, 3]
    assert squeeze(0b1010, 0b1110) == 0b101
    with pytest.raises(DeltaMatroidError):
        mask_of([0])


def test_set_system_normalizes_and_rejects():
    S = SetSystem(2, (3, 0, 3))
    assert S.feasible == (0, 3)
    with pytest.raises(ImproperSetSystemError):
        SetSystem(2, ())
    with pytest.raises(DeltaMatroidError):
        SetSystem(2, (4,))
    with pytest.raises(CapacityError):
        SetSystem(17, (0,))


def test_validate_examples():
    assert validate(GOOD) is None
    X, Y, x = validate(BAD)
    assert BAD.is_feasible(X) and BAD.is_feasible(Y)
    diff = X ^ Y
    assert diff >> (x - 1) & 1
    # no partner y restores feasibility
    assert not BAD.is_feasible(X ^ (1 << (x - 1)))
    for y in elements(diff):
        if y != x:
            assert not BAD.is_feasible(X ^ (1 << (x - 1)) ^ (1 << (y - 1)))
    assert validate(sets(1, [])) is None


def test_delta_matroid_constructor_validates():
    DeltaMatroid(GOOD.n, GOOD.feasible)
    with pytest.raises(NotADeltaMatroidError):
        DeltaMatroid(BAD.n, BAD.feasible)


def _naive_exchange(S):
    fam = set(S.feasible)
    for X in fam:
        for Y in fam:
            for x in elements(X ^ Y):
                if not any(
                    (X ^ (1 << (x - 1)) ^ (1 << (y - 1)) if y != x else X ^ (1 << (x - 1))) in fam
                    for y in elements(X ^ Y)
                ):
                    return False
    return True


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_validate_matches_naive_axiom(n):
    for S in all_set_systems(n):
        assert is_delta_matroid(S) == _naive_exchange(S)


def test_delta_matroid_counts(dms_up_to_4):
    # regression values, first computed with the naive axiom check above
    assert [len(dms_up_to_4[n]) for n in range(5)] == [1, 3, 15, 155, 5959]


def test_twist_examples():
    D = sets(2, [], [1, 2])
    assert twist(D, mask_of([1])) == sets(2, [1], [2])
    assert twist(D, 0) == D
    with pytest.raises(DeltaMatroidError):
        twist(D, 4)


@given(set_systems(), st.data())
def test_twist_involution(S, data):
    X = data.draw(st.integers(0, (1 << S.n) - 1))
    T = twist(S, X)
    assert twist(T, X) == S
    assert len(T.feasible) == len(S.feasible)


def test_bouchet_twist_closure(dms_up_to_4):
    for n, dms in dms_up_to_4.items():
        for D in dms:
            for X in range(1 << n):
                assert is_delta_matroid(twist(D, X))


def test_classify():
    assert classify(sets(2, [], [1]), 2) is ElementClass.LOOP
    assert classify(sets(2, [1], [1, 2]), 1) is ElementClass.COLOOP
    assert classify(sets(2, [], [1, 2]), 1) is ElementClass.ORDINARY
    with pytest.raises(DeltaMatroidError):
        classify(sets(2, []), 3)


def test_reduce_examples():
    D = DeltaMatroid.of(sets(2, [], [1], [1, 2]))
    assert reduce(D, 1, "delete") == sets(1, [])
    assert reduce(D, 1, "contract") == sets(1, [], [1])
    loopy = DeltaMatroid.of(sets(2, [], [1]))
    assert contract(loopy, 2) == delete(loopy, 2) == sets(1, [], [1])
    coloop = DeltaMatroid.of(sets(2, [1], [1, 2]))
    assert delete(coloop, 1) == contract(coloop, 1) == sets(1, [], [1])
    with pytest.raises(DeltaMatroidError):
        reduce(UNIT, 1, "delete")
    with pytest.raises(DeltaMatroidError):
        reduce(D, 3, "delete")


def test_reductions_stay_delta_matroids(dms_up_to_4):
    for n in range(1, 5):
        for D in dms_up_to_4[n]:
            for e in range(1, n + 1):
                assert is_delta_matroid(delete(D, e))
                assert is_delta_matroid(contract(D, e))


def test_restrict_examples():
    D = DeltaMatroid.of(sets(3, [], [1], [2], [1, 3], [1, 2, 3]))
    assert restrict(D, D.ground) == D
    assert restrict(D, mask_of([1, 2])) == sets(2, [], [1], [2])
    coloop = DeltaMatroid.of(sets(2, [1], [1, 2]))
    assert restrict(coloop, mask_of([2])) == sets(1, [], [1])


def _restrict_in_order(D, sub, order):
    # sequential deletion with relabeling; `order` lists original labels
    labels = list(range(1, D.n + 1))
    for e in order:
        if sub >> (e - 1) & 1:
            continue
        D = delete(D, labels.index(e) + 1)
        labels.remove(e)
    return D


@settings(max_examples=200)
@given(binary_delta_matroids(max_n=5), st.data())
def test_restrict_independent_of_order(D, data):
    sub = data.draw(st.integers(0, D.ground))
    order = data.draw(st.permutations(range(1, D.n + 1)))
    assert restrict(D, sub) == _restrict_in_order(D, sub, order)
    assert restrict(D, sub) == _restrict_in_order(D, sub, list(reversed(order)))


def test_product_examples():
    D = DeltaMatroid.of(sets(2, [], [1], [2]))
    assert product(UNIT, D) == D
    assert product(D, UNIT) == D
    assert product(sets(1, [], [1]), sets(1, [])) == sets(2, [], [1])


@given(binary_delta_matroids(max_n=3), binary_delta_matroids(max_n=3))
def test_product_commutes_up_to_relabeling(D1, D2):
    P, Q = product(D1, D2), product(D2, D1)
    assert len(P.feasible) == len(D1.feasible) * len(D2.feasible)
    assert is_isomorphic(P, Q)
    assert is_delta_matroid(P)


def test_distance_examples():
    assert distance(GOOD, mask_of([3])) == 1
    assert distance(GOOD, mask_of([2, 3])) == 0
    assert distance(sets(2, [], [1, 2]), mask_of([1])) == 1


@given(set_systems(max_n=6))
def test_distance_profile_matches_definition(S):
    prof = distance_profile(S)
    for X in range(1 << S.n):
        d = min(popcount(F ^ X) for F in S.feasible)
        assert prof[X] == d == distance(S, X)
        assert (d == 0) == S.is_feasible(X)
        assert d <= S.n


def test_canonicalize_examples():
    a, pa = canonicalize(sets(2, [], [1]))
    b, pb = canonicalize(sets(2, [], [2]))
    assert a == b
    assert permute(sets(2, [], [1]), pa) == a
    assert permute(sets(2, [], [2]), pb) == b
    assert canonicalize(a)[0] == a
    assert canonicalize(sets(2, [], [1]))[0] != canonicalize(sets(2, [], [1, 2]))[0]


@settings(max_examples=150)
@given(set_systems(max_n=5), st.data())
def test_canonical_form_is_relabeling_invariant(S, data):
    C, perm = canonicalize(S)
    assert C.feasible == brute_canonical(S)
    assert permute(S, perm) == C
    p = data.draw(st.permutations(range(1, S.n + 1)))
    assert canonicalize(permute(S, tuple(p)))[0] == C


def test_canonical_capacity():
    with pytest.raises(CapacityError):
        canonicalize(SetSystem(9, (0,)))


def test_canonical_classes_separate_n3():
    # orbit counting over all 255 proper set systems on three elements
    classes = {}
    for S in all_set_systems(3):
        classes.setdefault(brute_canonical(S), set()).add(canonicalize(S)[0].feasible)
    assert all(len(v) == 1 for v in classes.values())
    assert len({next(iter(v)) for v in classes.values()}) == len(classes)


def test_random_pairs_of_isomorphic_systems():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 6)
        S = SetSystem(n, tuple(rng.sample(range(1 << n), rng.randint(1, 1 << n))))
        p = list(range(1, n + 1))
        rng.shuffle(p)
        assert is_isomorphic(S, permute(S, tuple(p)))
