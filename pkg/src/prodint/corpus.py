"""Small semigroups for randomized checks.

Random semigroups are closures of random self-maps of ``{0, ..., d-1}``
under composition, which are associative by construction.
"""

from __future__ import annotations

from itertools import product as cartesian

import numpy as np

from prodint.core import FiniteSemigroup, SubsetMask, adjoin_identity
from prodint.truncadd import ta_semigroup
from prodint.wordcap import finite_instantiation


def _compose(f: tuple, g: tuple) -> tuple:
    """``f`` then ``g``."""
    return tuple(g[x] for x in f)


def transformation_closure(generators, limit: int | None = None) -> FiniteSemigroup | None:
    """Semigroup generated by the given self-maps, or None if it outgrows ``limit``."""
    elems = list(dict.fromkeys(tuple(g) for g in generators))
    index = {e: i for i, e in enumerate(elems)}
    frontier = list(elems)
    while frontier:
        new = []
        for f in frontier:
            for g in list(elems):
                for h in (_compose(f, g), _compose(g, f)):
                    if h not in index:
                        index[h] = len(elems)
                        elems.append(h)
                        new.append(h)
                        if limit is not None and len(elems) > limit:
                            return None
        frontier = new
    table = [[index[_compose(f, g)] for g in elems] for f in elems]
    labels = ["".join(map(str, e)) for e in elems]
    identity = index.get(tuple(range(len(elems[0]))))
    return FiniteSemigroup(table, labels=labels, identity=identity, check=True)


def full_transformation_monoid(d: int) -> FiniteSemigroup:
    return transformation_closure(cartesian(range(d), repeat=d))


def null_semigroup(m: int = 2) -> FiniteSemigroup:
    """``x * y = 0`` for all ``x, y``."""
    return FiniteSemigroup(np.zeros((m, m), dtype=int), labels=[str(i) for i in range(m)], check=True)


def random_semigroup(rng: np.random.Generator, max_size: int = 5, degree: int = 3) -> FiniteSemigroup:
    while True:
        k = int(rng.integers(1, 3))
        gens = [tuple(int(v) for v in rng.integers(0, degree, degree)) for _ in range(k)]
        S = transformation_closure(gens, limit=max_size)
        if S is not None:
            return S


def random_subset(rng: np.random.Generator, S: FiniteSemigroup, nonempty: bool = False) -> SubsetMask:
    while True:
        bits = rng.random(S.size) < 0.5
        if bits.any() or not nonempty:
            return SubsetMask(S, bits)


def small_semigroups() -> list[FiniteSemigroup]:
    """Fixed corpus: transformation monoids, constructions at small parameters, a null semigroup."""
    return [
        full_transformation_monoid(1),
        full_transformation_monoid(2),
        full_transformation_monoid(3),
        null_semigroup(2),
        null_semigroup(3),
        finite_instantiation(2, 2),
        finite_instantiation(3, 2),
        ta_semigroup(2),
        ta_semigroup(3),
    ]


def monoid_corpus(rng: np.random.Generator, extra: int = 10) -> list[FiniteSemigroup]:
    out = [S for S in small_semigroups() if S.identity is not None]
    out += [adjoin_identity(S) for S in small_semigroups()]
    out += [adjoin_identity(random_semigroup(rng)) for _ in range(extra)]
    return out
