"""Finite and cofinite subsets of the positive integers.

A :class:`NatSet` is either ``finite`` (``support`` lists the members) or
``cofinite`` (``support`` lists the complement).  Since the positive integers
are infinite, no finite set equals a cofinite one, so ``(kind, support)`` is a
canonical form and dataclass equality is extensional equality.

Text grammar::

    none            empty set
    all             every positive integer
    1,3,7           finite set
    all-except:2,4  cofinite set
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

FINITE = "finite"
COFINITE = "cofinite"


def _normalize(values: Iterable[int]) -> tuple[int, ...]:
    out = sorted(set(int(v) for v in values))
    if out and out[0] < 1:
        raise ValueError(f"NatSet members must be >= 1, got {out[0]}")
    return tuple(out)


@dataclass(frozen=True)
class NatSet:
    kind: str
    support: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in (FINITE, COFINITE):
            raise ValueError(f"unknown NatSet kind {self.kind!r}")
        support = tuple(self.support)
        if any(b <= a for a, b in zip(support, support[1:])):
            raise ValueError("NatSet support must be strictly increasing")
        if support and support[0] < 1:
            raise ValueError("NatSet support entries must be >= 1")
        object.__setattr__(self, "support", support)

    @classmethod
    def finite(cls, members: Iterable[int] = ()) -> NatSet:
        return cls(FINITE, _normalize(members))

    @classmethod
    def cofinite(cls, excluded: Iterable[int] = ()) -> NatSet:
        return cls(COFINITE, _normalize(excluded))

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    @property
    def is_cofinite(self) -> bool:
        return self.kind == COFINITE

    def contains(self, h: int) -> bool:
        if h < 1:
            raise ValueError(f"exponents are positive integers, got {h}")
        return (h in self.support) == self.is_finite

    def __contains__(self, h: int) -> bool:
        return self.contains(h)

    def intersect(self, other: NatSet) -> NatSet:
        a, b = set(self.support), set(other.support)
        if self.is_finite and other.is_finite:
            return NatSet.finite(a & b)
        if self.is_cofinite and other.is_cofinite:
            return NatSet.cofinite(a | b)
        if self.is_finite:
            return NatSet.finite(a - b)
        return NatSet.finite(b - a)

    __and__ = intersect

    def complement(self) -> NatSet:
        return NatSet(COFINITE if self.is_finite else FINITE, self.support)

    def window(self, hmax: int) -> frozenset[int]:
        """Members in ``[1, hmax]``."""
        return frozenset(h for h in range(1, hmax + 1) if self.contains(h))

    def equal_up_to(self, other: NatSet, hmax: int) -> bool:
        if hmax < 1:
            raise ValueError("hmax must be >= 1")
        return self.window(hmax) == other.window(hmax)

    def __str__(self) -> str:
        body = ",".join(str(v) for v in self.support)
        if self.is_finite:
            return body or "none"
        return f"all-except:{body}" if body else "all"

    @classmethod
    def parse(cls, text: str) -> NatSet:
        text = text.strip()
        if text == "none":
            return cls.finite()
        if text == "all":
            return cls.cofinite()
        if text.startswith("all-except:"):
            return cls.cofinite(_parse_list(text[len("all-except:"):], text))
        return cls.finite(_parse_list(text, text))


def _parse_list(body: str, text: str) -> list[int]:
    items = [p.strip() for p in body.split(",")]
    if not body.strip() or any(not p.isdigit() for p in items):
        raise ValueError(f"cannot parse NatSet from {text!r}")
    values = [int(p) for p in items]
    if any(v < 1 for v in values):
        raise ValueError(f"NatSet members must be >= 1 in {text!r}")
    return values


ALL = NatSet.cofinite()
NONE = NatSet.finite()


def nat_contains(s: NatSet, h: int) -> bool:
    return s.contains(h)


def nat_intersect(a: NatSet, b: NatSet) -> NatSet:
    return a.intersect(b)


def nat_equal_up_to(a: NatSet, b: NatSet, hmax: int) -> bool:
    return a.equal_up_to(b, hmax)
