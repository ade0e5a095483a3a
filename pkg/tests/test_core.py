import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from prodint.core import (
    DirectProduct,
    FiniteSemigroup,
    HReport,
    SubsetMask,
    Tail,
    adjoin_identity,
    box_subset,
    check_associativity,
    direct_product,
    embed,
    empty_family_H,
    family_intersection,
    minkowski,
    power,
    power_oracle,
    product_intersection_set,
)
from prodint.corpus import full_transformation_monoid, null_semigroup, random_semigroup, random_subset
from prodint.errors import BudgetExceeded, VerificationError
from prodint.natset import ALL, NatSet
from prodint.truncadd import ta_semigroup
from prodint.wordcap import family_member, finite_instantiation


def brute_counterexample(table):
    m = len(table)
    for x, y, z in itertools.product(range(m), repeat=3):
        if table[table[x][y]][z] != table[x][table[y][z]]:
            return (x, y, z)
    return None


def test_associativity_examples():
    assert check_associativity(2, [[0, 0], [0, 0]]) is None
    S = ta_semigroup(2)
    assert check_associativity(S.size, S.table) is None


def test_associativity_counterexample_two_elements():
    # (0*0)*1 = 1*1 = 0 but 0*(0*1) = 0*0 = 1; triple (0,0,0) is fine
    table = [[1, 0], [0, 0]]
    assert brute_counterexample(table) == (0, 0, 1)
    assert check_associativity(2, table) == (0, 0, 1)


def test_associativity_matches_brute_on_all_two_element_tables():
    for entries in itertools.product(range(2), repeat=4):
        table = [list(entries[:2]), list(entries[2:])]
        assert check_associativity(2, table) == brute_counterexample(table)


def test_associativity_matches_brute_on_random_three_element_tables():
    rng = np.random.default_rng(1)
    for _ in range(200):
        table = rng.integers(0, 3, (3, 3)).tolist()
        assert check_associativity(3, table) == brute_counterexample(table)


def test_closure_violation_names_cell():
    with pytest.raises(ValueError, match=r"table\[1\]\[0\]"):
        check_associativity(2, [[0, 1], [2, 0]])


def test_non_associative_table_rejected():
    with pytest.raises(ValueError):
        FiniteSemigroup([[1, 0], [0, 0]])


def test_bad_identity_rejected():
    with pytest.raises(ValueError):
        FiniteSemigroup([[0, 0], [0, 0]], identity=1)


def test_minkowski_examples():
    S = ta_semigroup(2)
    assert minkowski(S, S.subset([4, 5]), S.subset([4, 6])).elements() == (8, 9, 10, 11)
    assert minkowski(S, S.empty(), S.subset([3])).is_empty()
    B = S.subset([1, 7, 12])
    assert minkowski(S, S.subset([0]), B) == B


def test_minkowski_rejects_foreign_masks():
    S, T = ta_semigroup(2), ta_semigroup(3)
    with pytest.raises(ValueError):
        minkowski(S, S.subset([1]), T.subset([1]))


def test_power_examples():
    S = ta_semigroup(2)
    assert power(S, S.subset([4, 5]), 2).elements() == (8, 9, 10)
    assert power(S, S.subset([4, 6]), 3).elements() == (12,)
    B = S.subset([2, 3])
    assert power(S, B, 1) == B
    with pytest.raises(ValueError):
        power(S, B, 0)


def test_power_oracle_examples():
    S = ta_semigroup(2)
    assert power_oracle(S, S.subset([4, 5]), 2).elements() == (8, 9, 10)
    assert power_oracle(S, S.subset([3]), 3).elements() == (9,)
    W = finite_instantiation(3, 3)
    got = power_oracle(W, W.mask(family_member(3, 1)), 3)
    assert [W.label(i) for i in got.elements()] == ["a", "b"]


def test_power_oracle_budget():
    S = ta_semigroup(2)
    with pytest.raises(BudgetExceeded):
        power_oracle(S, S.subset(range(5)), 4, budget=100)


def test_power_oracle_env_budget(monkeypatch):
    monkeypatch.setenv("PRODINT_BUDGET", "10")
    S = ta_semigroup(2)
    with pytest.raises(BudgetExceeded):
        power_oracle(S, S.subset(range(4)), 2)


def test_family_intersection_examples():
    S = ta_semigroup(2)
    assert family_intersection([S.subset([4, 5]), S.subset([4, 6])]).elements() == (4,)
    B = S.subset([1, 2])
    assert family_intersection([B]) == B
    W = finite_instantiation(2, 2)
    got = family_intersection([W.subset([0, 2, 3]), W.subset([0, 3])])
    assert [W.label(i) for i in got.elements()] == ["a", "w:2"]
    with pytest.raises(ValueError):
        family_intersection([])


def test_product_intersection_set_pair():
    S = ta_semigroup(2)
    report = product_intersection_set(S, [S.subset([4, 5]), S.subset([4, 6])], 6)
    assert report.verdicts == (True, False, True, True, True, True)
    assert report.tail == Tail(3, True)
    assert report.resolved == NatSet.cofinite([2])


def test_product_intersection_set_single_member():
    rng = np.random.default_rng(3)
    for _ in range(20):
        S = random_semigroup(rng)
        report = product_intersection_set(S, [random_subset(rng, S)], 5)
        assert all(report.verdicts)


def test_tail_by_stabilization():
    M = full_transformation_monoid(2)
    report = product_intersection_set(M, [M.full(), M.full()], 4)
    assert report.tail == Tail(1, True)
    assert report.resolved == ALL


def test_empty_family_examples():
    assert empty_family_H(ta_semigroup(2)) == ALL
    assert empty_family_H(null_semigroup(2)) == NatSet.finite([1])
    assert empty_family_H(finite_instantiation(2, 2)) == NatSet.finite([1])


def test_adjoin_identity():
    N = null_semigroup(2)
    T = adjoin_identity(N)
    assert T.size == 3 and T.identity == 2
    assert check_associativity(T.size, T.table) is None
    assert empty_family_H(T) == ALL
    M = ta_semigroup(2)
    T2 = adjoin_identity(M)
    assert T2.identity == M.size
    # the old identity 0 no longer fixes the new element
    assert T2.table[0, M.size] == 0 != M.size


def test_adjoin_identity_preserves_reports():
    S = ta_semigroup(2)
    fam = [S.subset([4, 5]), S.subset([4, 6])]
    T = adjoin_identity(S)
    a = product_intersection_set(S, fam, 6)
    b = product_intersection_set(T, [embed(m, T) for m in fam], 6)
    assert a.verdicts == b.verdicts


def test_direct_product_examples():
    P = direct_product([ta_semigroup(2), ta_semigroup(3)])
    assert P.size == 481
    assert P.identity == 0
    one = direct_product([ta_semigroup(2)])
    assert np.array_equal(one.table, ta_semigroup(2).table)
    with pytest.raises(BudgetExceeded):
        direct_product([ta_semigroup(2), ta_semigroup(3)], budget=100)


def test_direct_product_encoding_is_mixed_radix():
    A, B = full_transformation_monoid(2), null_semigroup(3)
    P = direct_product([A, B])
    assert P.encode([1, 2]) == 1 * 3 + 2
    for x, y in itertools.product(range(P.size), repeat=2):
        (a1, b1), (a2, b2) = divmod(x, 3), divmod(y, 3)
        assert P.table[x, y] == A.table[a1, a2] * 3 + B.table[b1, b2]
    assert check_associativity(P.size, P.table) is None


def test_box_subset_examples():
    S2, S3 = ta_semigroup(2), ta_semigroup(3)
    P = direct_product([S2, S3])
    assert box_subset(P, [S2.full(), S3.full()]) == P.full()
    assert box_subset(P, [S2.empty(), S3.full()]).is_empty()
    assert len(box_subset(P, [S2.subset([4, 5]), S3.subset([9, 10])])) == 4
    with pytest.raises(ValueError):
        box_subset(P, [S2.full()])


def test_subset_mask_length_checked():
    with pytest.raises(ValueError):
        SubsetMask(ta_semigroup(2), np.zeros(3, dtype=bool))


def test_semigroup_json_round_trip():
    S = adjoin_identity(null_semigroup(2))
    text = json.dumps(S.to_json())
    again = FiniteSemigroup.from_json(json.loads(text))
    assert json.dumps(again.to_json()) == text
    assert again.identity == 2


def test_hreport_json_round_trip():
    S = ta_semigroup(2)
    report = product_intersection_set(S, [S.subset([4, 5]), S.subset([4, 6])], 6)
    text = report.dumps()
    assert HReport.from_json(json.loads(text)).dumps() == text
    assert json.loads(text) == {
        "hmax": 6, "verdicts": [True, False, True, True, True, True],
        "tail": {"from": 3, "verdict": True}, "resolved": "all-except:2",
    }


def test_hreport_invariants():
    with pytest.raises(VerificationError):
        HReport.build([False, True])
    with pytest.raises(ValueError):
        HReport(3, (True, True, False), Tail(2, True), NatSet.cofinite([3]))


# property tests over generated semigroups

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=5))
def test_power_matches_oracle(seed, h):
    rng = np.random.default_rng(seed)
    S = random_semigroup(rng, max_size=8)
    B = random_subset(rng, S)
    assert power(S, B, h) == power_oracle(S, B, h)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=5))
def test_power_monotone(seed, h):
    rng = np.random.default_rng(seed)
    S = random_semigroup(rng)
    B = random_subset(rng, S)
    bigger = SubsetMask(S, B.bits | random_subset(rng, S).bits)
    assert power(S, B, h).issubset(power(S, bigger, h))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_power_of_intersection_contained(seed):
    rng = np.random.default_rng(seed)
    S = random_semigroup(rng)
    fam = [random_subset(rng, S) for _ in range(3)]
    A = family_intersection(fam)
    for h in range(1, 5):
        assert power(S, A, h).issubset(family_intersection([power(S, m, h) for m in fam]))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_h1_always_true(seed):
    rng = np.random.default_rng(seed)
    S = random_semigroup(rng)
    fam = [random_subset(rng, S) for _ in range(int(rng.integers(1, 4)))]
    assert product_intersection_set(S, fam, 4).verdicts[0]


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_empty_family_dichotomy(seed):
    S = random_semigroup(np.random.default_rng(seed))
    assert empty_family_H(S) in (NatSet.finite([1]), ALL)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_box_product_componentwise(seed):
    rng = np.random.default_rng(seed)
    comps = [random_semigroup(rng) for _ in range(int(rng.integers(1, 4)))]
    P = direct_product(comps)
    xs = [random_subset(rng, S) for S in comps]
    ys = [random_subset(rng, S) for S in comps]
    expected = box_subset(P, [minkowski(S, a, b) for S, a, b in zip(comps, xs, ys)])
    assert minkowski(P, box_subset(P, xs), box_subset(P, ys)) == expected
    # the lazily decoded product agrees with its materialized table
    X = box_subset(P, xs)
    flat = FiniteSemigroup(P.table, check=False)
    assert minkowski(flat, SubsetMask(flat, X.bits), SubsetMask(flat, X.bits)).bits.tolist() == \
        minkowski(P, X, X).bits.tolist()


def test_direct_product_is_a_direct_product_instance():
    assert isinstance(direct_product([null_semigroup(2)]), DirectProduct)
