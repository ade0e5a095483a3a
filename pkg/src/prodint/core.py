"""Finite semigroups given by operation tables, and product sets of their subsets.

Elements of a semigroup of size ``m`` are the integers ``0..m-1``.  Subsets are
boolean masks.  The h-fold product set of a mask ``B`` is the set of all
products ``b1 * ... * bh``; :func:`power` computes it by repeated two-set
products and :func:`power_oracle` by enumerating every ordered tuple.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Optional, Sequence

import numpy as np

from prodint.errors import BudgetExceeded, VerificationError
from prodint.natset import ALL, NatSet

DEFAULT_TABLE_BUDGET = 10**4
# constructor-time associativity checks are O(m^3); larger tables are checked on request
AUTO_CHECK_LIMIT = 400
# cap on the number of products evaluated per vectorized chunk
_CHUNK = 1 << 22


def tuple_budget() -> int:
    """Tuple budget for :func:`power_oracle`; ``PRODINT_BUDGET`` overrides the default 10**7."""
    value = os.environ.get("PRODINT_BUDGET")
    if value is None:
        return 10**7
    budget = int(value)
    if budget <= 0:
        raise ValueError("PRODINT_BUDGET must be positive")
    return budget


def _as_table(size: int, table) -> np.ndarray:
    arr = np.asarray(table)
    if arr.shape != (size, size):
        raise ValueError(f"table must be {size}x{size}, got shape {arr.shape}")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        raise ValueError("table entries must be integers")
    bad = np.argwhere((arr < 0) | (arr >= size))
    if len(bad):
        x, y = (int(v) for v in bad[0])
        raise ValueError(f"closure violated: table[{x}][{y}] = {int(arr[x, y])} not in [0, {size})")
    return arr.astype(np.int64)


def check_associativity(size: int, table) -> Optional[tuple[int, int, int]]:
    """Return None if the operation is associative, else the least violating triple."""
    t = _as_table(size, table)
    for x in range(size):
        left = t[t[x]]  # left[y, z] = (x*y)*z
        right = t[x][t]  # right[y, z] = x*(y*z)
        bad = np.argwhere(left != right)
        if len(bad):
            return (x, int(bad[0][0]), int(bad[0][1]))
    return None


def check_associativity_sampled(S: FiniteSemigroup, samples: int, rng: np.random.Generator):
    """Check ``samples`` random triples; returns a violating triple or None."""
    x, y, z = (rng.integers(0, S.size, samples) for _ in range(3))
    left = S.mul_pairs(S.mul_pairs(x, y), z)
    right = S.mul_pairs(x, S.mul_pairs(y, z))
    bad = np.flatnonzero(left != right)
    if len(bad):
        i = bad[0]
        return (int(x[i]), int(y[i]), int(z[i]))
    return None


class FiniteSemigroup:
    """A semigroup on ``{0, ..., size-1}`` with a read-only operation table.

    ``check`` controls the associativity check at construction: ``True``
    always, ``False`` never, ``None`` only for carriers up to
    ``AUTO_CHECK_LIMIT`` elements.
    """

    def __init__(self, table, labels: Optional[Sequence[str]] = None,
                 identity: Optional[int] = None, check: Optional[bool] = None):
        arr = np.asarray(table)
        size = arr.shape[0] if arr.ndim == 2 else 0
        if size == 0:
            raise ValueError("a semigroup needs a non-empty carrier")
        t = _as_table(size, arr)
        t.setflags(write=False)
        self._size = size
        self._table = t
        self._labels = None if labels is None else tuple(labels)
        if self._labels is not None and len(self._labels) != size:
            raise ValueError("one label per element required")
        if check is None:
            check = size <= AUTO_CHECK_LIMIT
        if check:
            bad = check_associativity(size, t)
            if bad is not None:
                raise ValueError(f"operation is not associative at {bad}")
        self.identity = identity
        if identity is not None:
            e = int(identity)
            if not (np.array_equal(t[e], np.arange(size)) and np.array_equal(t[:, e], np.arange(size))):
                raise ValueError(f"element {e} is not a two-sided identity")

    @property
    def size(self) -> int:
        return self._size

    @property
    def table(self) -> np.ndarray:
        return self._table

    @property
    def labels(self) -> Optional[tuple[str, ...]]:
        return self._labels

    def label(self, x: int) -> str:
        return self._labels[x] if self._labels is not None else str(x)

    def mul(self, xs, ys) -> np.ndarray:
        """All products ``x*y`` as a ``len(xs) x len(ys)`` array."""
        return self._table[np.ix_(np.asarray(xs, dtype=np.int64), np.asarray(ys, dtype=np.int64))]

    def mul_pairs(self, xs, ys) -> np.ndarray:
        """Elementwise products ``xs[i]*ys[i]``."""
        return self._table[np.asarray(xs, dtype=np.int64), np.asarray(ys, dtype=np.int64)]

    def is_absorbing(self, z: int) -> bool:
        everything = np.arange(self.size)
        return bool(np.all(self.mul([z], everything) == z) and np.all(self.mul(everything, [z]) == z))

    def subset(self, elements: Iterable[int] = ()) -> SubsetMask:
        bits = np.zeros(self.size, dtype=bool)
        idx = list(elements)
        if idx:
            bits[idx] = True
        return SubsetMask(self, bits)

    def full(self) -> SubsetMask:
        return SubsetMask(self, np.ones(self.size, dtype=bool))

    def empty(self) -> SubsetMask:
        return SubsetMask(self, np.zeros(self.size, dtype=bool))

    def to_json(self) -> dict:
        out = {"size": self.size, "table": self.table.tolist()}
        if self._labels is not None:
            out["labels"] = list(self._labels)
        if self.identity is not None:
            out["identity"] = int(self.identity)
        return out

    @classmethod
    def from_json(cls, data: dict) -> FiniteSemigroup:
        if len(data["table"]) != data["size"]:
            raise ValueError("size does not match table")
        return cls(data["table"], labels=data.get("labels"), identity=data.get("identity"))

    def __repr__(self):
        return f"{type(self).__name__}(size={self.size})"


class DirectProduct(FiniteSemigroup):
    """Direct product with componentwise multiplication.

    Elements are encoded mixed-radix with component 0 as the most significant
    digit.  Products are evaluated by decoding into components, so the full
    table is only materialized when :attr:`table` is read.
    """

    def __init__(self, components: Sequence[FiniteSemigroup]):
        if not components:
            raise ValueError("direct product needs at least one component")
        self.components = tuple(components)
        self.radices = tuple(c.size for c in self.components)
        strides = [1] * len(self.radices)
        for i in range(len(self.radices) - 2, -1, -1):
            strides[i] = strides[i + 1] * self.radices[i + 1]
        self.strides = tuple(strides)
        self._size = int(np.prod(self.radices))
        self._table = None
        self._labels = None
        ids = [c.identity for c in self.components]
        self.identity = None if any(e is None for e in ids) else self.encode(ids)

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            if self._size > 4 * DEFAULT_TABLE_BUDGET:
                raise BudgetExceeded(f"refusing to materialize a {self._size}^2 table")
            everything = np.arange(self._size)
            t = self.mul(everything, everything)
            t.setflags(write=False)
            self._table = t
        return self._table

    def encode(self, coords: Sequence[int]) -> int:
        return int(sum(int(c) * s for c, s in zip(coords, self.strides)))

    def decode(self, xs) -> list[np.ndarray]:
        xs = np.asarray(xs, dtype=np.int64)
        return [(xs // s) % r for s, r in zip(self.strides, self.radices)]

    def label(self, x: int) -> str:
        coords = [int(c) for c in self.decode([x])]
        return "(" + ",".join(c.label(v) for c, v in zip(self.components, coords)) + ")"

    def mul(self, xs, ys) -> np.ndarray:
        out = None
        for comp, s, xi, yi in zip(self.components, self.strides, self.decode(xs), self.decode(ys)):
            part = comp.mul(xi, yi) * s
            out = part if out is None else out + part
        return out

    def mul_pairs(self, xs, ys) -> np.ndarray:
        out = None
        for comp, s, xi, yi in zip(self.components, self.strides, self.decode(xs), self.decode(ys)):
            part = comp.mul_pairs(xi, yi) * s
            out = part if out is None else out + part
        return out

    def is_absorbing(self, z: int) -> bool:
        coords = [int(c[0]) for c in self.decode([z])]
        return all(c.is_absorbing(v) for c, v in zip(self.components, coords))


@dataclass(eq=False)
class SubsetMask:
    semigroup: FiniteSemigroup
    bits: np.ndarray = field(repr=False)

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=bool).copy()
        if bits.shape != (self.semigroup.size,):
            raise ValueError(f"mask length {bits.shape} does not match carrier size {self.semigroup.size}")
        bits.setflags(write=False)
        self.bits = bits

    def elements(self) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.bits))

    def __len__(self):
        return int(self.bits.sum())

    def __contains__(self, x: int) -> bool:
        return bool(self.bits[x])

    def is_empty(self) -> bool:
        return not self.bits.any()

    def _same(self, other: SubsetMask):
        if other.semigroup is not self.semigroup:
            raise ValueError("subsets belong to different semigroups")

    def __eq__(self, other):
        if not isinstance(other, SubsetMask):
            return NotImplemented
        return other.semigroup is self.semigroup and np.array_equal(self.bits, other.bits)

    __hash__ = None

    def __and__(self, other: SubsetMask) -> SubsetMask:
        self._same(other)
        return SubsetMask(self.semigroup, self.bits & other.bits)

    def issubset(self, other: SubsetMask) -> bool:
        self._same(other)
        return not np.any(self.bits & ~other.bits)

    __le__ = issubset

    def __repr__(self):
        shown = [self.semigroup.label(i) for i in self.elements()[:12]]
        more = ", ..." if len(self) > 12 else ""
        return "{" + ", ".join(shown) + more + "}"


def _check_member(S: FiniteSemigroup, *masks: SubsetMask):
    for m in masks:
        if m.semigroup is not S:
            raise ValueError("subset does not belong to the given semigroup")


def minkowski(S: FiniteSemigroup, X: SubsetMask, Y: SubsetMask) -> SubsetMask:
    """The product set ``XY = {x*y : x in X, y in Y}``."""
    _check_member(S, X, Y)
    xs, ys = np.flatnonzero(X.bits), np.flatnonzero(Y.bits)
    out = np.zeros(S.size, dtype=bool)
    if len(xs) == 0 or len(ys) == 0:
        return SubsetMask(S, out)
    rows = max(1, _CHUNK // len(ys))
    for start in range(0, len(xs), rows):
        out[S.mul(xs[start:start + rows], ys).ravel()] = True
        if out.all():
            break
    return SubsetMask(S, out)


def powers(S: FiniteSemigroup, B: SubsetMask, hmax: int) -> list[SubsetMask]:
    """``[B^1, ..., B^hmax]``.

    Once ``B^(k+1) == B^k`` every later power is the same set, so the
    remaining entries are filled without further products.
    """
    if hmax < 1:
        raise ValueError("exponent must be >= 1")
    _check_member(S, B)
    out = [B]
    while len(out) < hmax:
        nxt = minkowski(S, out[-1], B)
        if nxt == out[-1]:
            out.extend([nxt] * (hmax - len(out)))
            break
        out.append(nxt)
    return out


def power(S: FiniteSemigroup, B: SubsetMask, h: int) -> SubsetMask:
    return powers(S, B, h)[-1]


def power_oracle(S: FiniteSemigroup, B: SubsetMask, h: int, budget: Optional[int] = None) -> SubsetMask:
    """h-fold product set by folding every ordered h-tuple of ``B`` left to right."""
    if h < 1:
        raise ValueError("exponent must be >= 1")
    _check_member(S, B)
    budget = tuple_budget() if budget is None else budget
    elems = np.flatnonzero(B.bits)
    k = len(elems)
    total = k**h
    if total > budget:
        raise BudgetExceeded(f"{k}^{h} = {total} tuples exceeds budget {budget}")
    out = np.zeros(S.size, dtype=bool)
    step = max(1, _CHUNK // h)
    for start in range(0, total, step):
        t = np.arange(start, min(total, start + step), dtype=np.int64)
        acc = elems[(t // k ** (h - 1)) % k]
        for j in range(1, h):
            acc = S.mul_pairs(acc, elems[(t // k ** (h - 1 - j)) % k])
        out[acc] = True
    return SubsetMask(S, out)


def family_intersection(subsets: Sequence[SubsetMask]) -> SubsetMask:
    if not subsets:
        raise ValueError("empty family: use empty_family_H for the empty index set")
    S = subsets[0].semigroup
    _check_member(S, *subsets)
    return SubsetMask(S, reduce(np.logical_and, (m.bits for m in subsets)))


# Every HReport constructed anywhere is counted here; verdict at h=1 must be true.
REPORT_STATS = {"reports": 0, "h1_violations": 0}


@dataclass(frozen=True)
class Tail:
    start: int
    verdict: bool


@dataclass(frozen=True)
class HReport:
    """Verdicts ``A^h == intersection of A_q^h`` for ``h = 1..hmax``, plus an optional tail.

    ``verdicts[h-1]`` is the verdict at exponent ``h``.  When ``tail`` is
    present the verdict is constant from ``tail.start`` on, and ``resolved``
    is the exact product intersection set.
    """

    hmax: int
    verdicts: tuple[bool, ...]
    tail: Optional[Tail] = None
    resolved: Optional[NatSet] = None

    def __post_init__(self):
        object.__setattr__(self, "verdicts", tuple(bool(v) for v in self.verdicts))
        REPORT_STATS["reports"] += 1
        if len(self.verdicts) != self.hmax or self.hmax < 1:
            raise ValueError("need exactly one verdict per exponent 1..hmax")
        if not self.verdicts[0]:
            REPORT_STATS["h1_violations"] += 1
            raise VerificationError("exponent 1 must always be in the product intersection set")
        if (self.tail is None) != (self.resolved is None):
            raise ValueError("resolved is present exactly when a tail certificate is")
        if self.tail is not None:
            if not 1 <= self.tail.start <= self.hmax:
                raise ValueError("tail must start inside the window")
            if any(v != self.tail.verdict for v in self.verdicts[self.tail.start - 1:]):
                raise ValueError("tail verdict disagrees with the window")
            if self.resolved.window(self.hmax) != self.window_set().window(self.hmax):
                raise ValueError("resolved set disagrees with the verdicts")
            if self.resolved.contains(self.hmax + 1) != self.tail.verdict:
                raise ValueError("resolved set disagrees with the tail")

    @classmethod
    def build(cls, verdicts: Sequence[bool], tail: Optional[Tail] = None) -> HReport:
        verdicts = tuple(bool(v) for v in verdicts)
        resolved = None
        if tail is not None:
            if tail.verdict:
                resolved = NatSet.cofinite(h for h, v in enumerate(verdicts, 1) if not v)
            else:
                resolved = NatSet.finite(h for h, v in enumerate(verdicts, 1) if v)
        return cls(len(verdicts), verdicts, tail, resolved)

    def window_set(self) -> NatSet:
        """The exact answer if resolved, else the members seen in the window."""
        if self.resolved is not None:
            return self.resolved
        return NatSet.finite(h for h, v in enumerate(self.verdicts, 1) if v)

    def truncate(self, hmax: int) -> HReport:
        """The same report restricted to a shorter window."""
        if hmax >= self.hmax:
            return self
        tail = self.tail if self.tail is not None and self.tail.start <= hmax else None
        return HReport.build(self.verdicts[:hmax], tail)

    def to_json(self) -> dict:
        return {
            "hmax": self.hmax,
            "verdicts": list(self.verdicts),
            "tail": None if self.tail is None else {"from": self.tail.start, "verdict": self.tail.verdict},
            "resolved": None if self.resolved is None else str(self.resolved),
        }

    @classmethod
    def from_json(cls, data: dict) -> HReport:
        tail = data.get("tail")
        resolved = data.get("resolved")
        return cls(
            data["hmax"],
            tuple(data["verdicts"]),
            None if tail is None else Tail(tail["from"], tail["verdict"]),
            None if resolved is None else NatSet.parse(resolved),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def render(self) -> str:
        marks = " ".join(f"{h} {'✓' if v else '✗'}" for h, v in enumerate(self.verdicts, 1))
        if self.resolved is not None:
            return f"{marks} ... H = {self.resolved}"
        return f"{marks} (no tail certificate)"


def _tail_certificate(S: FiniteSemigroup, sequences: list[list[SubsetMask]], hmax: int) -> Optional[int]:
    """Least h0 <= hmax from which every power sequence is provably constant."""
    for h0 in range(1, hmax + 1):
        sets = [seq[h0 - 1] for seq in sequences]
        elems = {s.elements() for s in sets}
        if len(elems) == 1:
            (only,) = elems
            if len(only) == 1 and S.is_absorbing(only[0]):
                return h0
        if all(seq[h0] == seq[h0 - 1] for seq in sequences):
            return h0
    return None


def product_intersection_set(S: FiniteSemigroup, family: Sequence[SubsetMask], hmax: int) -> HReport:
    """Compare ``A^h`` with the intersection of the ``A_q^h`` for ``h <= hmax``."""
    if hmax < 1:
        raise ValueError("hmax must be >= 1")
    _check_member(S, *family)
    A = family_intersection(family)
    distinct: list[SubsetMask] = []
    for m in family:
        if not any(m == d for d in distinct):
            distinct.append(m)
    # one extra power so stabilization at hmax itself can be seen
    seq_a = powers(S, A, hmax + 1)
    seq_q = [powers(S, m, hmax + 1) for m in distinct]
    verdicts = []
    for h in range(hmax):
        lhs = seq_a[h]
        rhs = family_intersection([seq[h] for seq in seq_q])
        if not lhs.issubset(rhs):
            raise VerificationError(f"internal error: A^{h + 1} is not contained in the intersection of powers")
        verdicts.append(lhs == rhs)
    h0 = _tail_certificate(S, [seq_a] + seq_q, hmax)
    tail = None if h0 is None else Tail(h0, verdicts[h0 - 1])
    return HReport.build(verdicts, tail)


def empty_family_H(S: FiniteSemigroup) -> NatSet:
    """Product intersection set of the empty family, whose intersection is ``S``."""
    full = S.full()
    return ALL if minkowski(S, full, full) == full else NatSet.finite([1])


def adjoin_identity(S: FiniteSemigroup) -> FiniteSemigroup:
    """``S`` plus a new identity element, appended as index ``S.size``."""
    m = S.size
    t = np.empty((m + 1, m + 1), dtype=np.int64)
    t[:m, :m] = S.table
    t[m, :] = np.arange(m + 1)
    t[:, m] = np.arange(m + 1)
    labels = [S.label(i) for i in range(m)] + ["e"]
    return FiniteSemigroup(t, labels=labels, identity=m, check=False)


def embed(mask: SubsetMask, T: FiniteSemigroup) -> SubsetMask:
    """Carry a subset of ``S`` into a semigroup whose first ``S.size`` elements are ``S``."""
    bits = np.zeros(T.size, dtype=bool)
    bits[: mask.semigroup.size] = mask.bits
    return SubsetMask(T, bits)


def direct_product(components: Sequence[FiniteSemigroup], budget: int = DEFAULT_TABLE_BUDGET) -> DirectProduct:
    size = int(np.prod([c.size for c in components])) if components else 0
    if size > budget:
        raise BudgetExceeded(f"product carrier has {size} elements, budget {budget}")
    return DirectProduct(components)


def box_subset(P: DirectProduct, parts: Sequence[SubsetMask]) -> SubsetMask:
    """All tuples whose i-th coordinate lies in ``parts[i]``."""
    if len(parts) != len(P.components):
        raise ValueError("need one part per component")
    for comp, part in zip(P.components, parts):
        if part.semigroup is not comp:
            raise ValueError("part does not belong to its component")
    bits = parts[0].bits
    for part in parts[1:]:
        bits = np.outer(bits, part.bits).ravel()
    return SubsetMask(P, bits)
