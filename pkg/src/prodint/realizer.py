"""Build a semigroup and family whose product intersection set is a prescribed X.

For every excluded exponent ``n`` there is a building block realizing
``N \\ {n}``; a direct product of blocks realizes the intersection of their
H-sets because box subsets multiply and intersect componentwise.  The direct
product is evaluated *virtually*, component by component, which stays exact
even for infinitely many components.  For at most two components and a small
enough carrier the product is also built explicitly and checked directly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import reduce
from typing import Optional, Sequence

import numpy as np

from prodint.core import (
    DEFAULT_TABLE_BUDGET,
    HReport,
    Tail,
    box_subset,
    direct_product,
    empty_family_H,
    family_intersection,
    power,
    product_intersection_set,
)
from prodint.corpus import null_semigroup, random_semigroup, random_subset
from prodint.errors import InfeasibleTarget, VerificationError
from prodint.natset import ALL, NatSet
from prodint.truncadd import bc_sets, cap, nat0_mult_bounded_check, ta_semigroup, verify_pair_single_exclusion
from prodint.wordcap import carrier_size, family_member, finite_instantiation, verify_single_exclusion_wordcap

FULL_N = "FullN"
WORDCAP_PRODUCT = "WordCapProduct"
TRUNCADD_PRODUCT = "TruncAddProduct"

NAT0_WINDOW = 50
EXPLICIT_MAX_COMPONENTS = 2


@dataclass(frozen=True)
class TargetSpec:
    x: NatSet

    def __post_init__(self):
        if 1 not in self.x:
            raise InfeasibleTarget(f"{self.x} does not contain 1, so it is never a product intersection set")


@dataclass
class Realization:
    mode: str
    components: list[int]
    window: int
    certificate: HReport
    target: NatSet
    q_count: Optional[int] = None
    explicit_product_size: Optional[int] = None
    # exact H-set over every exponent, from the closed fold rule
    exact: Optional[NatSet] = None
    family_property: Optional[str] = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "mode": self.mode,
            "components": list(self.components),
            "q_count": self.q_count,
            "window": self.window,
            "certificate": self.certificate.to_json(),
            "target": str(self.target),
            "explicit_product_size": self.explicit_product_size,
            "exact": None if self.exact is None else str(self.exact),
            "family_property": self.family_property,
            "notes": list(self.notes),
        }
        return out

    @classmethod
    def from_json(cls, data: dict) -> Realization:
        exact = data.get("exact")
        return cls(
            mode=data["mode"],
            components=list(data["components"]),
            window=data["window"],
            certificate=HReport.from_json(data["certificate"]),
            target=NatSet.parse(data["target"]),
            q_count=data.get("q_count"),
            explicit_product_size=data.get("explicit_product_size"),
            exact=None if exact is None else NatSet.parse(exact),
            family_property=data.get("family_property"),
            notes=list(data.get("notes", [])),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def complement_I(x: TargetSpec | NatSet) -> NatSet:
    """The excluded exponents; never contains 1."""
    spec = x if isinstance(x, TargetSpec) else TargetSpec(x)
    return spec.x.complement()


def virtual_product_H(component_Hs: Sequence[NatSet]) -> NatSet:
    """H-set of a direct product of blocks: the intersection of the blocks' H-sets."""
    return reduce(NatSet.intersect, component_Hs, ALL)


def virtual_fold_over(I: NatSet) -> NatSet:
    """Intersection of ``N \\ {n}`` over every ``n`` in ``I``, for finite or cofinite ``I``.

    For cofinite ``I`` this is a single complement rather than an infinite
    fold; the two agree whenever ``I`` is finite.
    """
    if I.is_finite:
        return virtual_product_H([NatSet.cofinite([n]) for n in I.support])
    return I.complement()


def default_window(x: NatSet) -> int:
    return max(8, max(x.support, default=0) + 2)


def _window(x: NatSet, hmax: Optional[int]) -> int:
    if hmax is None:
        return default_window(x)
    if hmax < 1:
        raise ValueError("hmax must be >= 1")
    if x.is_cofinite and x.support and hmax < x.support[-1] + 1:
        raise ValueError(f"hmax={hmax} cannot witness the exclusion at {x.support[-1]}")
    return hmax


def fold_reports(reports: Sequence[HReport], hmax: int) -> HReport:
    """Combine block reports over the window; the tail survives only if every block has one."""
    verdicts = [all(r.verdicts[h] for r in reports) for h in range(hmax)]
    tails = [r.tail for r in reports]
    if reports and all(t is not None for t in tails):
        start = max(t.start for t in tails)
        if start <= hmax:
            return HReport.build(verdicts, Tail(start, all(t.verdict for t in tails)))
    return HReport.build(verdicts)


def _check_window(certificate: HReport, x: NatSet, hmax: int):
    if not certificate.window_set().equal_up_to(x, hmax):
        raise VerificationError(f"certificate {certificate.window_set()} differs from target {x} on [1, {hmax}]")


def _components(x: NatSet, hmax: int) -> list[int]:
    I = complement_I(x)
    return [n for n in range(2, hmax + 1) if n in I]


def _finite_I(x: NatSet, hmax: int) -> bool:
    return x.is_cofinite and all(n <= hmax for n in x.support)


def realize_hnstar(x: NatSet, hmax: Optional[int] = None, explicit_budget: int = DEFAULT_TABLE_BUDGET) -> Realization:
    """Strictly decreasing family ``(A_q)_{q>=1}`` whose product intersection set is ``x``."""
    TargetSpec(x)
    hmax = _window(x, hmax)
    if x == ALL:
        report = nat0_mult_bounded_check(NAT0_WINDOW, hmax)
        _check_window(report, x, hmax)
        return Realization(
            FULL_N, [], hmax, report, x, exact=ALL, family_property="strictly_decreasing",
            notes=[f"multiplicative monoid of non-negative integers, checked on elements <= {NAT0_WINDOW}"],
        )
    comps = _components(x, hmax)
    blocks = [verify_single_exclusion_wordcap(n, max(hmax, n + 1)).truncate(hmax) for n in comps]
    certificate = fold_reports(blocks, hmax)
    if not _finite_I(x, hmax):
        certificate = HReport.build(certificate.verdicts)
    _check_window(certificate, x, hmax)
    real = Realization(
        WORDCAP_PRODUCT, comps, hmax, certificate, x,
        exact=virtual_fold_over(complement_I(x)), family_property="strictly_decreasing",
    )
    if explicit_budget and 0 < len(comps) <= EXPLICIT_MAX_COMPONENTS:
        _explicit_wordcap(real, explicit_budget)
    return real


def _explicit_wordcap(real: Realization, budget: int, qcheck: int = 5):
    """Box-lemma cross-check on the product of bounded-alphabet instantiations.

    With letters capped at ``L`` the family only decreases up to ``q = L``, so
    this checks the product plumbing, not the single-exclusion property itself.
    """
    L = next((L for L in range(qcheck, 1, -1)
              if np.prod([carrier_size(n, L) for n in real.components]) <= budget), None)
    if L is None:
        real.notes.append("explicit word-cap product skipped: over budget")
        return
    blocks = [finite_instantiation(n, L) for n in real.components]
    P = direct_product(blocks, budget=budget)
    qs = range(1, L + 2)
    fam = {q: [S.mask(family_member(S.n, q)) for S in blocks] for q in qs}
    boxes = {q: box_subset(P, fam[q]) for q in qs}
    for q in range(1, L + 1):
        if not (boxes[q + 1].issubset(boxes[q]) and boxes[q + 1] != boxes[q]):
            raise VerificationError(f"box family is not strictly decreasing at q={q}")
    for q in qs:
        for h in range(1, real.window + 1):
            direct = power(P, boxes[q], h)
            if direct != box_subset(P, [power(S, m, h) for S, m in zip(blocks, fam[q])]):
                raise VerificationError(f"power of a box differs from the box of powers at q={q}, h={h}")
    inter = family_intersection([boxes[q] for q in qs])
    if inter != box_subset(P, [family_intersection([fam[q][i] for q in qs]) for i in range(len(blocks))]):
        raise VerificationError("intersection of boxes differs from the box of intersections")
    direct = product_intersection_set(P, [boxes[q] for q in qs], real.window)
    virtual = fold_reports(
        [product_intersection_set(S, [fam[q][i] for q in qs], real.window) for i, S in enumerate(blocks)],
        real.window,
    )
    if direct.verdicts != virtual.verdicts:
        raise VerificationError("explicit product disagrees with the componentwise fold")
    real.explicit_product_size = P.size
    real.notes.append(f"explicit word-cap product with letters <= {L}: box lemmas and fold checked for q <= {L + 1}")


def realize_hq(x: NatSet, q_count: int, hmax: Optional[int] = None,
               explicit_budget: int = DEFAULT_TABLE_BUDGET) -> Realization:
    """Family of ``q_count >= 2`` subsets whose product intersection set is ``x``."""
    if q_count < 2:
        raise ValueError("q_count must be >= 2; smaller index sets are covered by classify_hq")
    TargetSpec(x)
    hmax = _window(x, hmax)
    if x == ALL:
        S = ta_semigroup(2)
        report = product_intersection_set(S, [S.full()] * q_count, hmax)
        _check_window(report, x, hmax)
        return Realization(FULL_N, [], hmax, report, x, q_count=q_count, exact=ALL,
                           notes=["every A_q is the whole monoid"])
    comps = _components(x, hmax)
    blocks = [verify_pair_single_exclusion(n, max(hmax, n + 1)).truncate(hmax) for n in comps]
    certificate = fold_reports(blocks, hmax)
    if not _finite_I(x, hmax):
        certificate = HReport.build(certificate.verdicts)
    _check_window(certificate, x, hmax)
    real = Realization(TRUNCADD_PRODUCT, comps, hmax, certificate, x, q_count=q_count,
                       exact=virtual_fold_over(complement_I(x)))
    size = int(np.prod([cap(n) + 1 for n in comps]))
    if explicit_budget and 0 < len(comps) <= EXPLICIT_MAX_COMPONENTS and size <= explicit_budget:
        P = direct_product([ta_semigroup(n) for n in comps], budget=explicit_budget)
        pairs = [bc_sets(n) for n in comps]
        B = box_subset(P, [b for b, _ in pairs])
        C = box_subset(P, [c for _, c in pairs])
        direct = product_intersection_set(P, [B, C] + [P.full()] * (q_count - 2), hmax)
        if direct.verdicts != certificate.verdicts:
            raise VerificationError(
                f"explicit product gives {direct.window_set()}, fold gives {certificate.window_set()}")
        real.explicit_product_size = P.size
    return real


@dataclass
class HQClass:
    cardinality: str
    realizable: Optional[list[NatSet]]
    rule: str
    witnesses: list[str] = field(default_factory=list)


ZERO, ONE, AT_LEAST_TWO = "zero", "one", "at_least_two"


def classify_hq(cardinality: str, trials: int = 50, sample: Optional[NatSet] = None, seed: int = 0) -> HQClass:
    """Which exponent sets occur for index sets of the given size, with checked witnesses."""
    if cardinality == ZERO:
        null, monoid = null_semigroup(2), ta_semigroup(2)
        got = [empty_family_H(null), empty_family_H(monoid)]
        if got != [NatSet.finite([1]), ALL]:
            raise VerificationError(f"empty-family witnesses gave {got}")
        return HQClass(ZERO, got, "either {1} or N, according to whether S*S == S",
                       ["null semigroup on 2 elements realizes {1}", "truncated-addition monoid realizes N"])
    if cardinality == ONE:
        rng = np.random.default_rng(seed)
        for _ in range(trials):
            S = random_semigroup(rng)
            report = product_intersection_set(S, [random_subset(rng, S)], 6)
            if not all(report.verdicts):
                raise VerificationError("a one-member family missed an exponent")
        return HQClass(ONE, [ALL], "always N, since the intersection is the single member",
                       [f"{trials} random one-member families, all exponents present up to 6"])
    if cardinality == AT_LEAST_TWO:
        sample = NatSet.cofinite([6]) if sample is None else sample
        real = realize_hq(sample, 2)
        return HQClass(AT_LEAST_TWO, None, "exactly the sets containing 1",
                       [f"realized {sample} with {real.mode} over components {real.components}"])
    raise ValueError(f"unknown cardinality {cardinality!r}")

