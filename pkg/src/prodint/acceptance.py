"""Acceptance checks with a pass/fail scoreboard, shared by ``prodint selftest`` and the test suite.

Every check raises on failure.  ``quick`` shrinks the parameter grids to
``n <= 3`` so the whole run takes a few seconds.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from prodint.core import (
    REPORT_STATS,
    adjoin_identity,
    box_subset,
    check_associativity,
    check_associativity_sampled,
    direct_product,
    embed,
    empty_family_H,
    family_intersection,
    minkowski,
    power,
    power_oracle,
    product_intersection_set,
)
from prodint.corpus import monoid_corpus, null_semigroup, random_semigroup, random_subset
from prodint.errors import VerificationError
from prodint.natset import ALL, NatSet
from prodint.realizer import realize_hnstar, realize_hq
from prodint.truncadd import (
    bc_sets,
    cap,
    nat0_members,
    nat0_mult_bounded_check,
    ta_closed_form_powers,
    ta_fold,
    ta_semigroup,
    verify_pair_single_exclusion,
)
from prodint.wordcap import (
    ALPHA_BETA,
    ONLY_ALPHA,
    finite_instantiation,
    intersect_all_q,
    three_way_check,
    verify_single_exclusion_wordcap,
)

DEFAULT_SEED = 20260


def _require(cond: bool, message: str):
    if not cond:
        raise VerificationError(message)


def pair_single_exclusion(quick=False, seed=DEFAULT_SEED) -> str:
    ns = range(2, 4) if quick else range(2, 7)
    for n in ns:
        report = verify_pair_single_exclusion(n, n + 3)
        _require(report.resolved == NatSet.cofinite([n]), f"n={n}: resolved {report.resolved}")
        _require(report.tail is not None and report.tail.start == n + 1, f"n={n}: tail {report.tail}")
        S = ta_semigroup(n)
        B, C = bc_sets(n)
        w = n**3 + n
        _require(w in (power(S, B, n) & power(S, C, n)) and w not in power(S, B & C, n), f"n={n}: witness {w}")
    return f"n in {list(ns)}: all-except:n with tail from n+1, witness n^3+n"


def truncadd_powers(quick=False, seed=DEFAULT_SEED) -> str:
    ns = range(2, 4) if quick else range(2, 7)
    for n in ns:
        S = ta_semigroup(n)
        for mask, closed_index in zip(bc_sets(n), (0, 1)):
            for h in range(1, n + 4):
                closed = sorted(ta_closed_form_powers(n, h)[closed_index])
                iterated = power(S, mask, h).elements()
                oracle = power_oracle(S, mask, h).elements()
                _require(list(iterated) == closed == list(oracle), f"n={n}, h={h}: powers disagree")
    for n in (2, 3):
        T = ta_semigroup(n).table
        xs = np.arange(cap(n) + 1)
        for length in (1, 2, 3):
            grids = np.meshgrid(*([xs] * length), indexing="ij")
            folded = grids[0]
            for g in grids[1:]:
                folded = T[folded, g]
            _require(np.array_equal(folded, np.minimum(sum(grids), cap(n))), f"n={n}: fold of length {length}")
        _require(ta_fold(n, [cap(n)] * 3) == cap(n), "fold saturates at the cap")
    return f"closed forms = iterated = enumerated for n in {list(ns)}; folds exhaustive for n in (2, 3)"


def wordcap_single_exclusion(quick=False, seed=DEFAULT_SEED) -> str:
    ns = range(2, 4) if quick else range(2, 6)
    for n in ns:
        report = verify_single_exclusion_wordcap(n, n + 3)
        _require(report.resolved == NatSet.cofinite([n]), f"n={n}: resolved {report.resolved}")
        for h in range(1, n + 4):
            expected = ALPHA_BETA if h == n else ONLY_ALPHA
            _require(intersect_all_q(n, h) == expected, f"n={n}, h={h}: intersection over q")
        S = finite_instantiation(n, 6)
        for q in range(1, 6):
            for h in range(1, n + 3):
                _require(three_way_check(S, q, h), f"n={n}, q={q}, h={h}: three-way disagreement")
    return f"n in {list(ns)}: all-except:n; grid L=6, q<=5, h<=n+2 agrees"


def wordcap_associativity(quick=False, seed=DEFAULT_SEED) -> str:
    for n, L in ((2, 4), (3, 3), (4, 2)):
        S = finite_instantiation(n, L, check=False)
        bad = check_associativity(S.size, S.table)
        _require(bad is None, f"(n, L)=({n}, {L}): not associative at {bad}")
    samples = 10**4 if quick else 10**5
    S = finite_instantiation(4, 4, check=False)
    bad = check_associativity_sampled(S, samples, np.random.default_rng(seed))
    _require(bad is None, f"(4, 4): not associative at {bad}")
    return f"exhaustive for (2,4), (3,3), (4,2); {samples} random triples for (4,4)"


def box_lemmas(quick=False, seed=DEFAULT_SEED) -> str:
    rng = np.random.default_rng(seed)
    trials = 40 if quick else 200
    for t in range(trials):
        comps = [random_semigroup(rng) for _ in range(int(rng.integers(1, 4)))]
        P = direct_product(comps)
        xs = [random_subset(rng, S) for S in comps]
        ys = [random_subset(rng, S) for S in comps]
        X, Y = box_subset(P, xs), box_subset(P, ys)
        _require(
            minkowski(P, X, Y) == box_subset(P, [minkowski(S, a, b) for S, a, b in zip(comps, xs, ys)]),
            f"trial {t}: product of boxes",
        )
        for h in range(1, 5):
            _require(power(P, X, h) == box_subset(P, [power(S, a, h) for S, a in zip(comps, xs)]),
                     f"trial {t}: power of a box at h={h}")
        fam = [[random_subset(rng, S) for S in comps] for _ in range(int(rng.integers(1, 4)))]
        boxes = [box_subset(P, parts) for parts in fam]
        per_comp = [family_intersection([parts[i] for parts in fam]) for i in range(len(comps))]
        _require(family_intersection(boxes) == box_subset(P, per_comp), f"trial {t}: intersection of boxes")
    return f"{trials} random products of up to 3 semigroups of size <= 5"


def small_index_sets(quick=False, seed=DEFAULT_SEED) -> str:
    rng = np.random.default_rng(seed)
    _require(empty_family_H(null_semigroup(2)) == NatSet.finite([1]), "null semigroup")
    monoids = monoid_corpus(rng)
    for M in monoids:
        _require(empty_family_H(M) == ALL, f"monoid {M} gave {empty_family_H(M)}")
    for _ in range(50):
        S = random_semigroup(rng)
        report = product_intersection_set(S, [random_subset(rng, S)], 6)
        _require(all(report.verdicts), "one-member family lost an exponent")
    return f"empty family: null semigroup {{1}}, {len(monoids)} monoids N; 50 one-member families all N"


def _window_targets() -> list[tuple[NatSet, int]]:
    out = []
    for bits in itertools.product((False, True), repeat=7):
        X = [1] + [h for h, b in zip(range(2, 9), bits) if b]
        out.append((NatSet.finite(X), 8))
        out.append((NatSet.cofinite(sorted(set(range(2, 9)) - set(X))), None))
    for r in range(6):
        for s in itertools.combinations(range(2, 7), r):
            out.append((NatSet.cofinite(s), None))
    return out


def realizer_round_trip(quick=False, seed=DEFAULT_SEED) -> str:
    targets = _window_targets()
    if quick:
        targets = [(x, h) for x, h in targets if x.is_cofinite and max(x.support, default=0) <= 4]
    explicit = 0
    for x, hmax in targets:
        for q_count in (2, 5):
            real = realize_hq(x, q_count, hmax)
            _require(real.certificate.window_set().equal_up_to(x, real.window), f"hq {x}")
            _require(real.exact == x, f"hq {x}: exact {real.exact}")
            size = int(np.prod([cap(n) + 1 for n in real.components]))
            if 0 < len(real.components) <= 2 and size <= 10**4:
                _require(real.explicit_product_size == size, f"hq {x}: explicit product missing")
                explicit += 1
        real = realize_hnstar(x, hmax)
        _require(real.certificate.window_set().equal_up_to(x, real.window), f"hnstar {x}")
        _require(real.exact == x, f"hnstar {x}: exact {real.exact}")
    return f"{len(targets)} targets, {explicit} explicit product checks"


def nat0_full_n(quick=False, seed=DEFAULT_SEED) -> str:
    report = nat0_mult_bounded_check(50, 6)
    _require(all(report.verdicts), "some exponent failed")
    for h in range(1, 7):
        _require(all(0 in nat0_members(50, h, q) for q in range(1, 52)), f"0 missing at h={h}")
    _require(7 not in nat0_members(50, 2, 8) and min(nat0_members(50**2, 2, 8) - {0}) == 64, "q^h bound")
    return "M=50, h<=6: all exponents present"


def h1_always(quick=False, seed=DEFAULT_SEED) -> str:
    if REPORT_STATS["reports"] == 0:
        pair_single_exclusion(quick=True)
        wordcap_single_exclusion(quick=True)
    _require(REPORT_STATS["h1_violations"] == 0, f"{REPORT_STATS['h1_violations']} reports missed h=1")
    return f"{REPORT_STATS['reports']} reports, exponent 1 present in all"


def identity_adjunction(quick=False, seed=DEFAULT_SEED) -> str:
    rng = np.random.default_rng(seed)
    for t in range(25):
        S = random_semigroup(rng)
        fam = [random_subset(rng, S, nonempty=True) for _ in range(int(rng.integers(1, 4)))]
        T = adjoin_identity(S)
        _require(check_associativity(T.size, T.table) is None, f"trial {t}: adjoined monoid")
        before = product_intersection_set(S, fam, 6)
        after = product_intersection_set(T, [embed(m, T) for m in fam], 6)
        _require(before.verdicts == after.verdicts, f"trial {t}: verdicts changed")
    return "25 random families: identical verdicts on [1, 6]"


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    check: Callable[..., str]


CRITERIA = [
    Criterion(1, "pair single exclusion (truncated addition)", pair_single_exclusion),
    Criterion(2, "truncated-addition powers and folds vs oracle", truncadd_powers),
    Criterion(3, "word-cap single exclusion and three-way grid", wordcap_single_exclusion),
    Criterion(4, "word-cap associativity", wordcap_associativity),
    Criterion(5, "box product, box power, box intersection", box_lemmas),
    Criterion(6, "empty and one-member index sets", small_index_sets),
    Criterion(7, "realizer round trip", realizer_round_trip),
    Criterion(8, "full N via the multiplicative monoid", nat0_full_n),
    Criterion(9, "exponent 1 always present", h1_always),
    Criterion(10, "adjoining an identity preserves H", identity_adjunction),
]


@dataclass
class Outcome:
    criterion: Criterion
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.criterion.number:>2}. {self.criterion.name}: {self.detail} ({self.seconds:.2f}s)"


def run_criterion(c: Criterion, quick=False, seed=DEFAULT_SEED) -> Outcome:
    start = time.perf_counter()
    try:
        detail = c.check(quick=quick, seed=seed)
        passed = True
    except Exception as exc:  # reported on the scoreboard
        detail, passed = f"{type(exc).__name__}: {exc}", False
    return Outcome(c, passed, detail, time.perf_counter() - start)


def run_all(quick=False, seed=DEFAULT_SEED, echo=print) -> list[Outcome]:
    outcomes = []
    for c in CRITERIA:
        out = run_criterion(c, quick=quick, seed=seed)
        if echo is not None:
            echo(out.line())
        outcomes.append(out)
    return outcomes

