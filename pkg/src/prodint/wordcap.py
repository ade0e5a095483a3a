"""The word-cap semigroup: words of length < n over the positive integers, plus two absorbers.

Multiplication concatenates words while the total length stays below ``n``;
a product of length exactly ``n`` is ``beta`` and anything longer is
``alpha``.  Any product involving ``alpha`` or ``beta`` is ``alpha``.

The alphabet is infinite, so subsets are handled symbolically: a
:class:`SymbolicWordSet` is a pair of absorber flags plus a list of bound
vectors, where ``(b1, ..., bk)`` stands for every word ``[m1 ... mk]`` with
``mi >= bi``.  Bounds are plain ints, or :class:`QBound` values ``q + c`` for
a family parameter ``q`` that is left free.

Finite instantiations (letters capped at ``L``) are real finite semigroups and
serve as brute-force oracles only: with a capped alphabet the family
``A_q`` collapses to ``{alpha}`` for ``q > L``, so they cannot see the
infinite-alphabet behaviour on their own.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Iterable, Union

import numpy as np

from prodint.core import (
    DEFAULT_TABLE_BUDGET,
    FiniteSemigroup,
    HReport,
    SubsetMask,
    Tail,
    power,
    power_oracle,
)
from prodint.errors import BudgetExceeded, VerificationError
from prodint.natset import NatSet

ALPHA, BETA, WORD = "alpha", "beta", "word"


@dataclass(frozen=True)
class WordCapElem:
    kind: str
    letters: tuple[int, ...] = ()

    def __str__(self):
        if self.kind == ALPHA:
            return "a"
        if self.kind == BETA:
            return "b"
        return "w:" + ".".join(str(m) for m in self.letters)


alpha = WordCapElem(ALPHA)
beta = WordCapElem(BETA)


def word(*letters: int) -> WordCapElem:
    if not letters or any(m < 1 for m in letters):
        raise ValueError("words are non-empty with letters >= 1")
    return WordCapElem(WORD, tuple(letters))


def _check_elem(n: int, x: WordCapElem):
    if x.kind == WORD and not 1 <= len(x.letters) < n:
        raise ValueError(f"word {x} has length {len(x.letters)}, must be in [1, {n - 1}]")


def wc_mul(n: int, x: WordCapElem, y: WordCapElem) -> WordCapElem:
    _check_elem(n, x)
    _check_elem(n, y)
    if x.kind != WORD or y.kind != WORD:
        return alpha
    total = len(x.letters) + len(y.letters)
    if total < n:
        return WordCapElem(WORD, x.letters + y.letters)
    return beta if total == n else alpha


# ---------------------------------------------------------------- symbolic sets


@dataclass(frozen=True, order=True)
class QBound:
    """The bound ``q + offset`` in terms of the free family parameter ``q >= 1``."""

    offset: int = 0

    def at(self, q: int) -> int:
        return q + self.offset

    def __str__(self):
        return f"q+{self.offset}" if self.offset else "q"


Bound = Union[int, QBound]


def _le(a: Bound, b: Bound) -> bool:
    """``a <= b`` for every value of ``q >= 1``."""
    if isinstance(a, int) and isinstance(b, int):
        return a <= b
    if isinstance(a, QBound) and isinstance(b, QBound):
        return a.offset <= b.offset
    if isinstance(a, int):
        return a <= 1 + b.offset
    return False


def _key(b: Bound):
    return (0, b) if isinstance(b, int) else (1, b.offset)


def _dominates(p: tuple, r: tuple) -> bool:
    return len(p) == len(r) and all(_le(a, b) for a, b in zip(p, r))


def canonical_patterns(patterns: Iterable[Iterable[Bound]]) -> tuple[tuple[Bound, ...], ...]:
    """Drop duplicate and dominated bound vectors; sort by (length, bounds)."""
    pats = sorted({tuple(p) for p in patterns}, key=lambda p: (len(p), [_key(b) for b in p]))
    for p in pats:
        if not p or any(isinstance(b, int) and b < 1 for b in p):
            raise ValueError(f"invalid bound vector {p}")
    kept = [p for p in pats if not any(r != p and _dominates(r, p) for r in pats)]
    return tuple(kept)


@dataclass(frozen=True)
class SymbolicWordSet:
    alpha: bool = False
    beta: bool = False
    patterns: tuple[tuple[Bound, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "patterns", canonical_patterns(self.patterns))

    def is_empty(self) -> bool:
        return not (self.alpha or self.beta or self.patterns)

    @property
    def is_symbolic(self) -> bool:
        return any(isinstance(b, QBound) for p in self.patterns for b in p)

    def at(self, q: int) -> SymbolicWordSet:
        """Substitute a concrete value for the family parameter."""
        pats = [tuple(b.at(q) if isinstance(b, QBound) else b for b in p) for p in self.patterns]
        return SymbolicWordSet(self.alpha, self.beta, pats)

    def __contains__(self, x: WordCapElem) -> bool:
        if self.is_symbolic:
            raise ValueError("membership needs a concrete q; use .at(q) first")
        if x.kind == ALPHA:
            return self.alpha
        if x.kind == BETA:
            return self.beta
        return any(
            len(p) == len(x.letters) and all(m >= b for m, b in zip(x.letters, p)) for p in self.patterns
        )

    def issubset(self, other: SymbolicWordSet) -> bool:
        # an orthant {w >= p} lies in a union of orthants iff its corner p does
        if (self.alpha and not other.alpha) or (self.beta and not other.beta):
            return False
        return all(any(_dominates(r, p) for r in other.patterns) for p in self.patterns)

    def bounded(self, L: int) -> set[WordCapElem]:
        """All members whose letters are at most ``L``."""
        if self.is_symbolic:
            raise ValueError("bounded enumeration needs a concrete q; use .at(q) first")
        out = set()
        if self.alpha:
            out.add(alpha)
        if self.beta:
            out.add(beta)
        for p in self.patterns:
            for letters in cartesian(*(range(b, L + 1) for b in p)):
                out.add(WordCapElem(WORD, letters))
        return out

    def to_json(self) -> dict:
        def enc(b):
            return b if isinstance(b, int) else str(b)

        return {"alpha": self.alpha, "beta": self.beta, "patterns": [[enc(b) for b in p] for p in self.patterns]}

    @classmethod
    def from_json(cls, data: dict) -> SymbolicWordSet:
        def dec(b):
            if isinstance(b, int):
                return b
            if b == "q":
                return QBound()
            if b.startswith("q+"):
                return QBound(int(b[2:]))
            raise ValueError(f"bad bound {b!r}")

        return cls(data["alpha"], data["beta"], [tuple(dec(b) for b in p) for p in data["patterns"]])

    def __str__(self):
        parts = (["a"] if self.alpha else []) + (["b"] if self.beta else [])
        parts += ["(" + ",".join(str(b) for b in p) + ")" for p in self.patterns]
        return "{" + ", ".join(parts) + "}"


ONLY_ALPHA = SymbolicWordSet(alpha=True)
ALPHA_BETA = SymbolicWordSet(alpha=True, beta=True)


def _check_set(n: int, X: SymbolicWordSet):
    for p in X.patterns:
        if not 1 <= len(p) < n:
            raise ValueError(f"pattern {p} has length outside [1, {n - 1}]")


def family_member(n: int, q: int) -> SymbolicWordSet:
    """``A_{n,q} = {alpha} + {[m] : m >= q}``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if q < 1:
        raise ValueError("q must be >= 1")
    return SymbolicWordSet(alpha=True, patterns=((q,),))


def family_member_symbolic(n: int) -> SymbolicWordSet:
    """``A_{n,q}`` with ``q`` left free."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return SymbolicWordSet(alpha=True, patterns=((QBound(),),))


def sym_mul(n: int, X: SymbolicWordSet, Y: SymbolicWordSet) -> SymbolicWordSet:
    _check_set(n, X)
    _check_set(n, Y)
    x_any, y_any = not X.is_empty(), not Y.is_empty()
    lengths = [(p, r, len(p) + len(r)) for p in X.patterns for r in Y.patterns]
    has_alpha = (
        ((X.alpha or X.beta) and y_any)
        or ((Y.alpha or Y.beta) and x_any)
        or any(total > n for _, _, total in lengths)
    )
    has_beta = any(total == n for _, _, total in lengths)
    return SymbolicWordSet(has_alpha, has_beta, [p + r for p, r, total in lengths if total < n])


def sym_power(n: int, X: SymbolicWordSet, h: int) -> SymbolicWordSet:
    if h < 1:
        raise ValueError("exponent must be >= 1")
    out = X
    for _ in range(h - 1):
        out = sym_mul(n, out, X)
    return out


def closed_form_power(n: int, q: Bound, h: int) -> SymbolicWordSet:
    """h-th power of ``A_{n,q}`` written down directly by cases on ``h`` versus ``n``."""
    if n < 2 or h < 1:
        raise ValueError("need n >= 2 and h >= 1")
    if isinstance(q, int) and q < 1:
        raise ValueError("q must be >= 1")
    if h < n:
        return SymbolicWordSet(alpha=True, patterns=((q,) * h,))
    if h == n:
        return ALPHA_BETA
    return ONLY_ALPHA


def _eliminate_q(X: SymbolicWordSet) -> SymbolicWordSet:
    """Intersection of ``X.at(q)`` over all ``q >= 1``.

    Absorber flags do not depend on ``q``.  A pattern with a position bounded
    below by ``q + c`` contributes nothing: a word whose largest letter is
    ``M`` fails that bound at ``q = M + 1``.  Patterns with only constant
    bounds are present for every ``q``.
    """
    kept = [p for p in X.patterns if all(isinstance(b, int) for b in p)]
    return SymbolicWordSet(X.alpha, X.beta, kept)


def intersect_all_q(n: int, h: int) -> SymbolicWordSet:
    return _eliminate_q(sym_power(n, family_member_symbolic(n), h))


def verify_single_exclusion_wordcap(n: int, hmax: int) -> HReport:
    """Product intersection set of the family ``(A_{n,q})_{q>=1}``, which must be all h except n."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if hmax < n + 1:
        raise ValueError(f"hmax must be >= n+1 = {n + 1}")
    A = intersect_all_q(n, 1)
    if A != ONLY_ALPHA:
        raise VerificationError(f"intersection of the family is {A}, expected {{a}}")
    generic = family_member_symbolic(n)
    verdicts = []
    h0 = None
    for h in range(1, hmax + 1):
        lhs = sym_power(n, A, h)
        rhs = intersect_all_q(n, h)
        if not lhs.issubset(rhs):
            raise VerificationError(f"internal error: A^{h} not contained in the intersection")
        verdicts.append(lhs == rhs)
        # alpha absorbs, so once every power is {alpha} nothing changes again
        if h0 is None and lhs == rhs == ONLY_ALPHA and sym_power(n, generic, h) == ONLY_ALPHA:
            h0 = h
    if h0 is None:
        raise VerificationError("no absorbing tail inside the window")
    report = HReport.build(verdicts, Tail(h0, verdicts[h0 - 1]))
    if report.resolved != NatSet.cofinite([n]):
        raise VerificationError(f"resolved {report.resolved}, expected all-except:{n}")
    return report


def decreasing_check(n: int, qmax: int) -> bool:
    """Strict decrease of ``A_{n,1} > A_{n,2} > ... > A_{n,qmax}``, with ``[q]`` as the witness."""
    if qmax < 2:
        raise ValueError("qmax must be >= 2")
    for q in range(1, qmax):
        big, small = family_member(n, q), family_member(n, q + 1)
        if not small.issubset(big) or big.issubset(small):
            return False
        if word(q) not in big or word(q) in small:
            return False
    return True


# --------------------------------------------------------- finite instantiation


class WordCapSemigroup(FiniteSemigroup):
    """Word-cap semigroup with letters restricted to ``1..L``.

    Index 0 is alpha, 1 is beta, then words ordered by length and then
    lexicographically.
    """

    def __init__(self, n: int, L: int, check=None):
        self.n, self.L = n, L
        self._offsets = [0, 2]
        for k in range(1, n):
            self._offsets.append(self._offsets[-1] + L**k)
        size = self._offsets[-1]
        lengths = np.zeros(size, dtype=np.int64)
        ranks = np.zeros(size, dtype=np.int64)
        for k in range(1, n):
            lo, hi = self._offsets[k], self._offsets[k + 1]
            lengths[lo:hi] = k
            ranks[lo:hi] = np.arange(L**k)
        is_word = lengths > 0
        total = lengths[:, None] + lengths[None, :]
        both = is_word[:, None] & is_word[None, :]
        offsets = np.array(self._offsets + [0], dtype=np.int64)
        concat = offsets[np.minimum(total, n)] + ranks[:, None] * (L ** lengths)[None, :] + ranks[None, :]
        table = np.where(both & (total < n), concat, np.where(both & (total == n), 1, 0))
        labels = [str(self.element(i)) for i in range(size)]
        super().__init__(table, labels=labels, check=check)

    def index(self, x: WordCapElem) -> int:
        if x.kind == ALPHA:
            return 0
        if x.kind == BETA:
            return 1
        k = len(x.letters)
        if not 1 <= k < self.n or max(x.letters) > self.L:
            raise ValueError(f"{x} is not in the instantiation n={self.n}, L={self.L}")
        rank = 0
        for m in x.letters:
            rank = rank * self.L + (m - 1)
        return self._offsets[k] + rank

    def element(self, i: int) -> WordCapElem:
        if i == 0:
            return alpha
        if i == 1:
            return beta
        k = max(j for j in range(1, self.n) if self._offsets[j] <= i)
        rank = i - self._offsets[k]
        letters = []
        for _ in range(k):
            rank, d = divmod(rank, self.L)
            letters.append(d + 1)
        return WordCapElem(WORD, tuple(reversed(letters)))

    def mask(self, X: SymbolicWordSet) -> SubsetMask:
        """The part of ``X`` inside this bounded universe."""
        return self.subset(self.index(x) for x in X.bounded(self.L))


def carrier_size(n: int, L: int) -> int:
    return 2 + sum(L**k for k in range(1, n))


def finite_instantiation(n: int, L: int, budget: int = DEFAULT_TABLE_BUDGET, check=None) -> WordCapSemigroup:
    if n < 2 or L < 1:
        raise ValueError("need n >= 2 and L >= 1")
    size = carrier_size(n, L)
    if size > budget:
        raise BudgetExceeded(f"word-cap instantiation n={n}, L={L} has {size} elements, budget {budget}")
    return WordCapSemigroup(n, L, check=check)


def three_way_check(S: WordCapSemigroup, q: int, h: int, budget=None) -> bool:
    """``sym_power``, ``closed_form_power`` and tuple enumeration agree on ``S``'s universe.

    Products of words with letters in ``[q, L]`` again have letters in
    ``[q, L]``, so restricting to the bounded universe commutes with taking
    powers and the comparison is exact there.
    """
    n = S.n
    if not 1 <= q <= S.L:
        raise ValueError("q must lie in [1, L] so the generators are non-trivial")
    symbolic = sym_power(n, family_member(n, q), h)
    closed = closed_form_power(n, q, h)
    brute = power_oracle(S, S.mask(family_member(n, q)), h, budget=budget)
    return symbolic == closed and S.mask(symbolic) == brute and power(S, S.mask(family_member(n, q)), h) == brute


def dumps(X: SymbolicWordSet) -> str:
    return json.dumps(X.to_json())
