"""Truncated addition on ``{0, ..., n^3 + n^2}`` and the pair ``B_n, C_n`` inside it.

``x * y = min(x + y, cap)`` with ``cap = n^3 + n^2`` is a commutative monoid
with identity 0, and ``cap`` is absorbing.  With ``B = {n^2, n^2 + 1}`` and
``C = {n^2, n^2 + n}`` the exponents ``h`` where ``(B & C)^h == B^h & C^h``
are every positive integer except ``n``.

Also home to the bounded check for the multiplicative monoid of
non-negative integers used when the target set is all of N.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from prodint.core import (
    DEFAULT_TABLE_BUDGET,
    FiniteSemigroup,
    HReport,
    SubsetMask,
    power,
    product_intersection_set,
)
from prodint.errors import BudgetExceeded, VerificationError
from prodint.natset import NatSet


def cap(n: int) -> int:
    return n**3 + n**2


@lru_cache(maxsize=32)
def ta_semigroup(n: int, budget: int = DEFAULT_TABLE_BUDGET) -> FiniteSemigroup:
    if n < 2:
        raise ValueError("n must be >= 2")
    c = cap(n)
    if c + 1 > budget:
        raise BudgetExceeded(f"truncated-addition carrier for n={n} has {c + 1} elements")
    xs = np.arange(c + 1)
    table = np.minimum(xs[:, None] + xs[None, :], c)
    return FiniteSemigroup(table, labels=[str(x) for x in xs], identity=0, check=False)


def ta_fold(n: int, elements) -> int:
    elements = list(elements)
    c = cap(n)
    if not elements:
        raise ValueError("need at least one element")
    for a in elements:
        if not 0 <= a <= c:
            raise ValueError(f"{a} is outside [0, {c}]")
    return min(sum(elements), c)


def bc_sets(n: int) -> tuple[SubsetMask, SubsetMask]:
    S = ta_semigroup(n)
    return S.subset([n**2, n**2 + 1]), S.subset([n**2, n**2 + n])


def ta_closed_form_powers(n: int, h: int) -> tuple[frozenset, frozenset]:
    if n < 2 or h < 1:
        raise ValueError("need n >= 2 and h >= 1")
    if h > n:
        return frozenset({cap(n)}), frozenset({cap(n)})
    b = frozenset(h * n**2 + j for j in range(h + 1))
    c = frozenset(h * n**2 + j * n for j in range(h + 1))
    return b, c


def verify_pair_single_exclusion(n: int, hmax: int) -> HReport:
    """H-report for the family ``[B_n, C_n]``, checked against the expected shape.

    Raises :class:`VerificationError` unless the report resolves to all h
    except ``n`` with an absorbing tail, ``n^3 + n`` separates the two sides
    at ``h = n``, and both sides equal ``{h n^2}`` below ``n``.
    """
    if hmax < n + 1:
        raise ValueError(f"hmax must be >= n+1 = {n + 1}")
    S = ta_semigroup(n)
    B, C = bc_sets(n)
    report = product_intersection_set(S, [B, C], hmax)
    if report.resolved != NatSet.cofinite([n]):
        raise VerificationError(f"n={n}: resolved {report.resolved}, expected all-except:{n}")
    if report.tail.start > n + 1:
        raise VerificationError(f"n={n}: tail starts at {report.tail.start}")
    c = cap(n)
    last = [power(S, m, report.tail.start) for m in (B & C, B, C)]
    if any(m.elements() != (c,) for m in last) or not S.is_absorbing(c):
        raise VerificationError(f"n={n}: tail is not the absorbing singleton {{{c}}}")
    lhs = power(S, B & C, n)
    rhs = power(S, B, n) & power(S, C, n)
    w = n**3 + n
    if w not in rhs or w in lhs:
        raise VerificationError(f"n={n}: witness {w} does not separate the two sides")
    for h in range(1, n):
        expected = (h * n**2,)
        if power(S, B & C, h).elements() != expected or (power(S, B, h) & power(S, C, h)).elements() != expected:
            raise VerificationError(f"n={n}, h={h}: sides differ from {{{h * n * n}}}")
    return report


def hq_family(n: int, q_count: int) -> tuple[FiniteSemigroup, list[SubsetMask]]:
    """``[B_n, C_n, S, S, ...]`` of length ``q_count``."""
    if q_count < 2:
        raise ValueError("q_count must be >= 2")
    S = ta_semigroup(n)
    B, C = bc_sets(n)
    return S, [B, C] + [S.full()] * (q_count - 2)


def _has_factorization(m: int, h: int, q: int) -> bool:
    """Is ``m >= 1`` a product of ``h`` integers, each at least ``q``?"""
    if h == 1:
        return m >= q
    for d in range(max(q, 1), m + 1):
        if d**h > m:
            break
        if m % d == 0 and _has_factorization(m // d, h - 1, d):
            return True
    return False


def nat0_members(m_max: int, h: int, q: int) -> set[int]:
    """Elements of ``A_q^h`` up to ``m_max``, where ``A_q = {0} + {m : m >= q}`` under multiplication."""
    # factors are taken in non-decreasing order, which loses nothing by commutativity
    return {0} | {m for m in range(1, m_max + 1) if _has_factorization(m, h, q)}


def nat0_mult_bounded_check(M: int, hmax: int) -> HReport:
    """Windowed check of the multiplicative family ``A_q = {0} + {m : m >= q}``.

    Only elements up to ``M`` are examined, and ``q`` runs to ``M + 1``: an
    element ``m`` is excluded from every ``A_q^h`` with ``q > m`` because
    nonzero members there are at least ``q^h > m``.  The report has no tail
    certificate since the window is finite.
    """
    if M < 2 or hmax < 1:
        raise ValueError("need M >= 2 and hmax >= 1")
    qs = range(1, M + 2)
    A = set.intersection(*({0} | set(range(q, M + 1)) for q in qs))
    if A != {0}:
        raise VerificationError(f"intersection of the family is {sorted(A)}, expected {{0}}")
    verdicts = []
    for h in range(1, hmax + 1):
        lhs = {0}  # {0}^h
        rhs = set.intersection(*(nat0_members(M, h, q) for q in qs))
        if 0 not in rhs:
            raise VerificationError(f"0 missing from the intersection at h={h}")
        for m in range(1, M + 1):
            if m in nat0_members(M, h, m + 1):
                raise VerificationError(f"{m} lies in A_{m + 1}^{h}")
        verdicts.append(lhs == rhs)
    return HReport.build(verdicts)


def containment_gap(n: int, h: int) -> tuple[int, int]:
    """``(max B^h, min(C^h minus {h n^2}))`` for ``h < n``; the first is always smaller."""
    S = ta_semigroup(n)
    B, C = bc_sets(n)
    b = power(S, B, h).elements()
    c = [x for x in power(S, C, h).elements() if x != h * n**2]
    return max(b), min(c)

