import pytest
from hypothesis import given, strategies as st

from prodint.natset import ALL, NONE, NatSet, nat_contains, nat_equal_up_to, nat_intersect

supports = st.lists(st.integers(min_value=1, max_value=20), max_size=8)
natsets = st.builds(lambda fin, s: NatSet.finite(s) if fin else NatSet.cofinite(s), st.booleans(), supports)


def test_contains_examples():
    assert not nat_contains(NatSet.cofinite([2]), 2)
    assert nat_contains(NatSet.cofinite([2]), 7)
    assert nat_contains(NatSet.finite([1, 3]), 1)


@pytest.mark.parametrize("h", [0, -3])
def test_contains_rejects_nonpositive(h):
    with pytest.raises(ValueError):
        nat_contains(ALL, h)


def test_intersect_examples():
    assert nat_intersect(NatSet.cofinite([2]), NatSet.cofinite([3])) == NatSet.cofinite([2, 3])
    assert nat_intersect(NatSet.cofinite([2]), NatSet.finite([1, 2, 3])) == NatSet.finite([1, 3])
    assert nat_intersect(NatSet.finite([1]), NatSet.finite([2])) == NatSet.finite([])


def test_equal_up_to_examples():
    assert nat_equal_up_to(NatSet.cofinite([2]), NatSet.finite([1, 3, 4, 5]), 5)
    assert not nat_equal_up_to(NatSet.cofinite([2]), NatSet.finite([1, 3, 4, 5]), 6)
    assert nat_equal_up_to(ALL, ALL, 10)


def test_invalid_support():
    with pytest.raises(ValueError):
        NatSet("finite", (3, 2))
    with pytest.raises(ValueError):
        NatSet("cofinite", (0, 1))
    with pytest.raises(ValueError):
        NatSet.finite([0])


@pytest.mark.parametrize(
    "text, value",
    [
        ("none", NONE),
        ("all", ALL),
        ("1,3,7", NatSet.finite([1, 3, 7])),
        ("all-except:2,4", NatSet.cofinite([2, 4])),
    ],
)
def test_grammar(text, value):
    assert NatSet.parse(text) == value
    assert str(value) == text


@pytest.mark.parametrize("bad", ["", "x", "1,,2", "all-except:", "0,1", "-1"])
def test_grammar_rejects(bad):
    with pytest.raises(ValueError):
        NatSet.parse(bad)


@given(natsets)
def test_round_trip(s):
    assert NatSet.parse(str(s)) == s


@given(natsets, natsets)
def test_intersect_commutative(a, b):
    assert a & b == b & a


@given(natsets, natsets, natsets)
def test_intersect_associative(a, b, c):
    assert (a & b) & c == a & (b & c)


@given(natsets)
def test_intersect_idempotent(a):
    assert a & a == a


@given(natsets, natsets, st.integers(min_value=1, max_value=25))
def test_intersect_pointwise(a, b, h):
    assert ((a & b).contains(h)) == (a.contains(h) and b.contains(h))


@given(natsets, natsets)
def test_equality_is_extensional(a, b):
    # window 21 covers every support, plus one point beyond where cofinite and finite differ
    assert (a == b) == (a.window(21) == b.window(21))


@given(natsets)
def test_complement(a):
    assert all(a.complement().contains(h) != a.contains(h) for h in range(1, 25))
