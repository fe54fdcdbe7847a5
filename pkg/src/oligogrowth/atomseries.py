"""Fast exact u-series of fiber-cover atoms by Burnside counting on letter classes.

A word of length m is a sequence of nonempty fiber subsets. Reducing every letter
modulo H leaves words over the H-classes of subsets; the remaining moves (global
elements of L, the flip, the turn) act on class words through a finite group of
"position permutation plus per-position class twist" pairs, averaged here by
Burnside's lemma. The word model in :mod:`wordmodel` is the brute-force oracle.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .errors import LimitExceeded, NonIntegerAverage
from .permgrp import FiniteGroup, Permutation, _compose
from .qatoms import FiberCoverSpec, QReduct, require_valid
from .series import DEFAULT_ORDER, OrbitSeries, burnside_sequences

MAX_TWIST_GROUP = 200_000


@dataclass(frozen=True)
class LetterClasses:
    """H-orbits on nonempty subsets of the fiber, as bitmasks."""

    sizes: tuple[int, ...]
    class_of: dict
    reps: tuple[int, ...]


def _mask_image(g: tuple, mask: int) -> int:
    out = 0
    p = 0
    while mask:
        if mask & 1:
            out |= 1 << g[p]
        mask >>= 1
        p += 1
    return out


def letter_classes(H: FiniteGroup) -> LetterClasses:
    F = H.degree
    elems = H.raw_elements
    class_of: dict[int, int] = {}
    sizes, reps = [], []
    for mask in range(1, 1 << F):
        if mask in class_of:
            continue
        idx = len(reps)
        for h in elems:
            class_of[_mask_image(h, mask)] = idx
        reps.append(mask)
        sizes.append(bin(mask).count("1"))
    return LetterClasses(tuple(sizes), class_of, tuple(reps))


def class_action(lc: LetterClasses, g: tuple) -> tuple:
    """The permutation of H-classes induced by g (g must normalize H)."""
    return tuple(lc.class_of[_mask_image(g, r)] for r in lc.reps)


def coset_representatives(H: FiniteGroup, L: FiniteGroup) -> list[tuple]:
    seen: set = set()
    reps = []
    H_elems = H.raw_elements
    for g in sorted(L.raw_elements):
        if g in seen:
            continue
        reps.append(g)
        seen.update(_compose(g, h) for h in H_elems)
    return reps


def _fixed_by_size(lc: LetterClasses, perm: tuple) -> list[int]:
    counts = [0] * (max(lc.sizes, default=0) + 1)
    for c, img in enumerate(perm):
        if img == c:
            counts[lc.sizes[c]] += 1
    return counts


def order_class_tables(spec: FiberCoverSpec) -> list[list[int]]:
    """Per coset of H in L, the number of fixed H-classes of k-subsets for k = 1..|F|."""
    lc = letter_classes(spec.H)
    tables = []
    for g in coset_representatives(spec.H, spec.L):
        fixed = _fixed_by_size(lc, class_action(lc, g))
        tables.append([fixed[k] if k < len(fixed) else 0 for k in range(1, spec.fiber + 1)])
    return tables


def _mul_trunc(a: list[int], b: list[int], N: int) -> list[int]:
    out = [0] * (N + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(N + 1 - i):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def _geometric(step: int, N: int) -> list[int]:
    out = [0] * (N + 1)
    for k in range(0, N + 1, step):
        out[k] = 1
    return out


def eq_series(spec: FiberCoverSpec, N: int) -> OrbitSeries:
    """Multisets of H-classes averaged over L/H acting on the classes."""
    lc = letter_classes(spec.H)
    reps = coset_representatives(spec.H, spec.L)
    totals = [0] * (N + 1)
    for g in reps:
        perm = class_action(lc, g)
        poly = [1] + [0] * N
        seen = [False] * len(perm)
        for c in range(len(perm)):
            if seen[c]:
                continue
            length = 0
            x = c
            while not seen[x]:
                seen[x] = True
                x = perm[x]
                length += 1
            step = length * lc.sizes[c]
            if step <= N:
                poly = _mul_trunc(poly, _geometric(step, N), N)
        totals = [t + p for t, p in zip(totals, poly)]
    return _exact_average(totals, len(reps))


def _exact_average(totals: list[int], order: int) -> OrbitSeries:
    out = []
    for n, t in enumerate(totals):
        q, r = divmod(t, order)
        if r:
            raise NonIntegerAverage(f"sum {t} at n={n} is not divisible by {order}")
        out.append(q)
    return OrbitSeries(tuple(out))


class _TwistAlgebra:
    """Interned class permutations with a memoized composition table."""

    def __init__(self, lc: LetterClasses):
        self.lc = lc
        ident = tuple(range(len(lc.sizes)))
        self.perms: list[tuple] = [ident]
        self.index = {ident: 0}
        self._mul: dict[tuple[int, int], int] = {}
        self._fix: dict[int, list[int]] = {}

    def intern(self, perm: tuple) -> int:
        i = self.index.get(perm)
        if i is None:
            i = len(self.perms)
            self.perms.append(perm)
            self.index[perm] = i
        return i

    def mul(self, a: int, b: int) -> int:
        """Index of perms[a] after perms[b]."""
        key = (a, b)
        r = self._mul.get(key)
        if r is None:
            r = self.intern(_compose(self.perms[a], self.perms[b]))
            self._mul[key] = r
        return r

    def fixed(self, a: int) -> list[int]:
        f = self._fix.get(a)
        if f is None:
            f = _fixed_by_size(self.lc, self.perms[a])
            self._fix[a] = f
        return f


def _twist_generators(spec: FiberCoverSpec, alg: _TwistAlgebra, m: int) -> list[tuple]:
    lc = alg.lc
    ident_pos = tuple(range(m))
    gens = []
    for g in spec.L.generators:
        c = alg.intern(class_action(lc, g.images))
        gens.append((ident_pos, (c,) * m))
    if spec.flip is not None:
        c = alg.intern(class_action(lc, spec.flip.images))
        gens.append((tuple(range(m - 1, -1, -1)), (c,) * m))
    if spec.turn is not None:
        c = alg.intern(class_action(lc, spec.turn.images))
        gens.append((tuple((i + 1) % m for i in range(m)), (0,) * (m - 1) + (c,)))
    return gens


def _twist_compose(alg: _TwistAlgebra, second: tuple, first: tuple) -> tuple:
    p1, t1 = first
    p2, t2 = second
    pos = tuple(p2[p1[i]] for i in range(len(p1)))
    tw = tuple(alg.mul(t2[p1[i]], t1[i]) for i in range(len(p1)))
    return pos, tw


def _twist_group(spec: FiberCoverSpec, alg: _TwistAlgebra, m: int, limit: int) -> list[tuple]:
    gens = _twist_generators(spec, alg, m)
    ident = (tuple(range(m)), (0,) * m)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _twist_compose(alg, g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > limit:
                        raise LimitExceeded(f"twist group at length {m} exceeds {limit}")
        frontier = nxt
    return sorted(seen)


def _cycle_signature(alg: _TwistAlgebra, element: tuple) -> tuple:
    pos, tw = element
    m = len(pos)
    seen = [False] * m
    sig = []
    for i in range(m):
        if seen[i]:
            continue
        prod = 0
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            prod = alg.mul(tw[j], prod)
            j = pos[j]
            length += 1
        sig.append((length, prod))
    return tuple(sorted(sig))


def _signature_poly(alg: _TwistAlgebra, sig: tuple, N: int) -> list[int]:
    poly = [1] + [0] * N
    for length, prod in sig:
        factor = [0] * (N + 1)
        for s, count in enumerate(alg.fixed(prod)):
            if count and s * length <= N:
                factor[s * length] += count
        poly = _mul_trunc(poly, factor, N)
    return poly


def twisted_series(spec: FiberCoverSpec, N: int, limit: int = MAX_TWIST_GROUP) -> OrbitSeries:
    """u-series for the order, betweenness, cyclic and separation bases."""
    alg = _TwistAlgebra(letter_classes(spec.H))
    out = [1] + [0] * N
    for m in range(1, N + 1):
        group = _twist_group(spec, alg, m, limit)
        sig_counts = Counter(_cycle_signature(alg, element) for element in group)
        totals = [0] * (N + 1)
        for sig, count in sig_counts.items():
            poly = _signature_poly(alg, sig, N)
            for n in range(m, N + 1):
                totals[n] += count * poly[n]
        for n in range(m, N + 1):
            q, r = divmod(totals[n], len(group))
            if r:
                raise NonIntegerAverage(f"length {m}, n={n}: {totals[n]} / {len(group)}")
            out[n] += q
    return OrbitSeries(tuple(out))


@lru_cache(maxsize=256)
def _atom_series_cached(spec: FiberCoverSpec, N: int) -> OrbitSeries:
    if spec.fiber == 0:
        return OrbitSeries((1,) + (0,) * N)
    if spec.base is QReduct.EQ:
        return eq_series(spec, N)
    if spec.base is QReduct.ORDER:
        tables = order_class_tables(spec)
        return burnside_sequences(tables, len(tables), N)
    return twisted_series(spec, N)


def atom_series(spec: FiberCoverSpec, N: int = DEFAULT_ORDER) -> OrbitSeries:
    """Exact u_0..u_N of the atom described by ``spec``."""
    require_valid(spec)
    return _atom_series_cached(spec, N)
