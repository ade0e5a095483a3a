import itertools

import numpy as np
import pytest

from prodint.core import power, power_oracle, product_intersection_set
from prodint.errors import VerificationError
from prodint.natset import NatSet
from prodint.truncadd import (
    bc_sets,
    cap,
    containment_gap,
    hq_family,
    nat0_members,
    nat0_mult_bounded_check,
    ta_closed_form_powers,
    ta_fold,
    ta_semigroup,
    verify_pair_single_exclusion,
)


def test_semigroup_examples():
    S = ta_semigroup(2)
    assert S.size == 13
    assert S.table[4, 6] == 10 and S.table[6, 6] == 12
    assert S.identity == 0
    assert np.array_equal(S.table[0], np.arange(13))
    assert np.array_equal(S.table, S.table.T)
    assert S.is_absorbing(12)


def test_fold_examples():
    assert ta_fold(2, [4, 4, 4]) == 12
    assert ta_fold(2, [5, 5, 5]) == 12
    assert ta_fold(3, [9, 9]) == 18 == ta_semigroup(3).table[9, 9]
    with pytest.raises(ValueError):
        ta_fold(2, [13])


@pytest.mark.parametrize("n", [2, 3])
def test_fold_matches_table_exhaustively(n):
    T = ta_semigroup(n).table
    for length in (1, 2, 3):
        for xs in itertools.product(range(cap(n) + 1), repeat=length):
            acc = xs[0]
            for x in xs[1:]:
                acc = T[acc, x]
            assert acc == ta_fold(n, xs)


def test_bc_sets():
    B, C = bc_sets(2)
    assert B.elements() == (4, 5) and C.elements() == (4, 6)
    B, C = bc_sets(3)
    assert B.elements() == (9, 10) and C.elements() == (9, 12)
    assert (B & C).elements() == (9,)


def test_closed_forms_examples():
    assert ta_closed_form_powers(2, 2) == ({8, 9, 10}, {8, 10, 12})
    assert ta_closed_form_powers(3, 2) == ({18, 19, 20}, {18, 21, 24})
    assert ta_closed_form_powers(2, 5) == ({12}, {12})


@pytest.mark.parametrize("n", range(2, 7))
def test_closed_forms_match_power_and_oracle(n):
    S = ta_semigroup(n)
    B, C = bc_sets(n)
    for h in range(1, n + 4):
        cb, cc = ta_closed_form_powers(n, h)
        assert set(power(S, B, h).elements()) == cb == set(power_oracle(S, B, h).elements())
        assert set(power(S, C, h).elements()) == cc == set(power_oracle(S, C, h).elements())


def test_pair_exclusion_examples():
    report = verify_pair_single_exclusion(2, 6)
    assert report.resolved == NatSet.cofinite([2])
    S = ta_semigroup(2)
    B, C = bc_sets(2)
    assert 10 in power(S, B, 2) & power(S, C, 2) and power(S, B & C, 2).elements() == (8,)
    report = verify_pair_single_exclusion(4, 8)
    assert [h for h, v in enumerate(report.verdicts, 1) if not v] == [4]
    S = ta_semigroup(3)
    B, C = bc_sets(3)
    assert power(S, B & C, 2).elements() == (power(S, B, 2) & power(S, C, 2)).elements() == (18,)
    with pytest.raises(ValueError):
        verify_pair_single_exclusion(4, 4)


@pytest.mark.parametrize("n", range(2, 7))
def test_pair_exclusion_shape(n):
    report = verify_pair_single_exclusion(n, n + 3)
    assert report.tail.start == n + 1 and report.tail.verdict
    assert all(v == (h != n) for h, v in enumerate(report.verdicts, 1))


@pytest.mark.parametrize("n", range(3, 7))
def test_gap_below_n(n):
    for h in range(1, n):
        top_b, low_c = containment_gap(n, h)
        assert top_b == h * n * n + h < low_c == h * n * n + n


@pytest.mark.parametrize("n, q_count", [(2, 2), (2, 5), (3, 3), (3, 7)])
def test_hq_family_padding(n, q_count):
    S, fam = hq_family(n, q_count)
    assert len(fam) == q_count
    assert product_intersection_set(S, fam, n + 3).resolved == NatSet.cofinite([n])


def test_hq_family_verdicts_independent_of_padding():
    base = product_intersection_set(*hq_family(3, 2), 7)
    for q_count in range(3, 8):
        assert product_intersection_set(*hq_family(3, q_count), 7).verdicts == base.verdicts
    with pytest.raises(ValueError):
        hq_family(3, 1)


def test_nat0_check():
    report = nat0_mult_bounded_check(50, 6)
    assert all(report.verdicts) and report.hmax == 6
    assert all(0 in nat0_members(50, h, q) for h in range(1, 7) for q in range(1, 52))
    assert 7 not in nat0_members(50, 2, 8)
    assert min(nat0_members(100, 2, 8) - {0}) == 64


def test_nat0_members_brute():
    # direct enumeration of products of h factors from [q, 30]
    for h in (1, 2, 3):
        for q in (1, 2, 3, 5):
            brute = {0}
            for xs in itertools.product(range(q, 31), repeat=h):
                p = int(np.prod(xs))
                if p <= 30:
                    brute.add(p)
            assert nat0_members(30, h, q) == brute


def test_verification_error_type():
    assert issubclass(VerificationError, AssertionError)
