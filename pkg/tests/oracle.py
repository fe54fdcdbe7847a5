"""Naive reference computations used to freeze derived test values.

Nothing here imports the package: groups are plain sets of image tuples,
orbits are found by applying every element, and cover atoms are handled by
enumerating all group elements over a finite support instead of searching
with generator moves.
"""

from __future__ import annotations

import itertools
import math


def parse_perm(text: str, degree: int) -> tuple:
    imgs = list(range(degree))
    for body in text.replace(")", "|").replace("(", "").split("|"):
        pts = [int(p) for p in body.split()]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            imgs[a] = b
    return tuple(imgs)


def compose(a: tuple, b: tuple) -> tuple:
    """a after b."""
    return tuple(a[i] for i in b)


def closure(gens, degree: int) -> frozenset:
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elems)


def group(degree: int, *cycles: str) -> frozenset:
    return closure([parse_perm(c, degree) for c in cycles], degree)


def subset_orbits(G: frozenset, degree: int, n: int) -> int:
    seen, count = set(), 0
    for s in itertools.combinations(range(degree), n):
        if s in seen:
            continue
        count += 1
        seen.update(tuple(sorted(g[i] for i in s)) for g in G)
    return count


def tuple_orbits(G: frozenset, degree: int, n: int, injective: bool) -> int:
    pool = itertools.permutations(range(degree), n) if injective else itertools.product(range(degree), repeat=n)
    seen, count = set(), 0
    for t in pool:
        if t in seen:
            continue
        count += 1
        seen.update(tuple(g[i] for i in t) for g in G)
    return count


def is_normal(N: frozenset, G: frozenset) -> bool:
    inv = {g: tuple(sorted(range(len(g)), key=lambda i: g[i])) for g in G}
    return N <= G and all(compose(compose(g, h), inv[g]) in N for g in G for h in N)


# -- series ---------------------------------------------------------------------------

def partitions(N: int) -> list[int]:
    p = [1] + [0] * N
    for k in range(1, N + 1):
        for n in range(k, N + 1):
            p[n] += p[n - k]
    return p


def multiset_count(a: list[int], n: int) -> int:
    """Multisets of (size, label) pairs with total size n, label < a[size]."""
    kinds = [(k, lab) for k in range(1, n + 1) for lab in range(a[k] if k < len(a) else 0)]

    def rec(i: int, rest: int) -> int:
        if rest == 0:
            return 1
        if i == len(kinds):
            return 0
        k = kinds[i][0]
        return sum(rec(i + 1, rest - j * k) for j in range(rest // k + 1))
    return rec(0, n)


def bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def stirling2(n: int, k: int) -> int:
    return sum((-1) ** j * math.comb(k, j) * (k - j) ** n for j in range(k + 1)) // math.factorial(k)


# -- cover atoms over reducts of the rationals ------------------------------------------

def _base_motions(base: str, m: int, F: int, flip: tuple | None, turn: tuple | None):
    """(target position, fiber permutation) per support point, for one group element
    per motion of an m-point support."""
    ident = tuple(range(F))
    flip = flip or ident
    turn = turn or ident
    out = [[(a, ident) for a in range(m)]]
    if base in ("cyc", "sep"):
        for r in range(1, m):
            out.append([((a + r) % m, turn if a + r >= m else ident) for a in range(m)])
    if base in ("betw", "sep"):
        out += [[(m - 1 - p, compose(flip, d)) for p, d in mv] for mv in list(out)]
    return out


def _coset_reps(H: frozenset, L: frozenset) -> list[tuple]:
    reps, covered = [], set()
    for c in sorted(L):
        if c not in covered:
            reps.append(c)
            covered.update(compose(c, h) for h in H)
    return reps


class AtomOracle:
    """Orbit counts of finite subsets and injective tuples of F x Q for a cover atom."""

    def __init__(self, F: int, H: frozenset, L: frozenset, base: str,
                 flip: tuple | None = None, turn: tuple | None = None):
        self.F, self.H, self.base = F, sorted(H), base
        self.flip, self.turn = flip, turn
        self.reps = _coset_reps(H, L)

    def _hmin(self, letter: tuple) -> tuple:
        return min(tuple(sorted((h[x], lab) for x, lab in letter)) for h in self.H)

    def canonical(self, word: tuple) -> tuple:
        m = len(word)
        best = None
        motions = ([[(a, tuple(range(self.F))) for a in range(m)]] if self.base == "eq"
                   else _base_motions(self.base, m, self.F, self.flip, self.turn))
        for mv in motions:
            for c in self.reps:
                img = [None] * m
                for a, (p, d) in enumerate(mv):
                    g = compose(c, d)
                    img[p] = self._hmin(tuple((g[x], lab) for x, lab in word[a]))
                key = tuple(sorted(img)) if self.base == "eq" else tuple(img)
                if best is None or key < best:
                    best = key
        return best

    def _words(self, n: int):
        letters = {s: list(itertools.combinations(range(self.F), s)) for s in range(1, self.F + 1)}

        def comps(rest):
            if rest == 0:
                yield ()
                return
            for s in range(1, min(self.F, rest) + 1):
                for tail in comps(rest - s):
                    yield (s,) + tail
        for sizes in comps(n):
            for choice in itertools.product(*(letters[s] for s in sizes)):
                yield choice

    def u(self, n: int) -> int:
        if n == 0:
            return 1
        return len({self.canonical(tuple(tuple((x, 0) for x in s) for s in w)) for w in self._words(n)})

    def ell(self, n: int) -> int:
        if n == 0:
            return 1
        keys = set()
        for w in self._words(n):
            slots = [(a, x) for a, s in enumerate(w) for x in s]
            for labels in itertools.permutations(range(n)):
                word = [[] for _ in w]
                for (a, x), lab in zip(slots, labels):
                    word[a].append((x, lab))
                keys.add(self.canonical(tuple(tuple(sorted(s)) for s in word)))
        return len(keys)


def atom_from_cycles(F: int, H: tuple, L: tuple, base: str, flip: str | None = None,
                     turn: str | None = None) -> AtomOracle:
    return AtomOracle(F, group(F, *H), group(F, *L), base,
                      parse_perm(flip, F) if flip is not None else None,
                      parse_perm(turn, F) if turn is not None else None)


# -- constructions ------------------------------------------------------------------------

def wreath_elements(G: frozenset, k: int, top: frozenset, b: int) -> frozenset:
    """G wr top on k*b points, point (x, y) numbered y*k + x."""
    out = set()
    for locals_ in itertools.product(sorted(G), repeat=b):
        for t in top:
            out.add(tuple(t[p // k] * k + locals_[p // k][p % k] for p in range(k * b)))
    return frozenset(out)


def direct_product_elements(A: frozenset, a: int, B: frozenset, b: int) -> frozenset:
    return frozenset(x + tuple(a + i for i in y) for x in A for y in B)


def kernel_order(F: int, H: frozenset, L: frozenset, X: int) -> int:
    """Elements of Sym(F)^X whose coordinates lie in L and in one common H-coset."""
    reps = _coset_reps(H, L)
    count = 0
    for vec in itertools.product(sorted(L), repeat=X):
        if any(all(compose(_inverse(c), v) in H for v in vec) for c in reps):
            count += 1
    return count


def _inverse(g: tuple) -> tuple:
    inv = [0] * len(g)
    for i, j in enumerate(g):
        inv[j] = i
    return tuple(inv)


def set_partitions(n: int):
    if n == 0:
        yield []
        return
    for part in set_partitions(n - 1):
        for i in range(len(part)):
            yield part[:i] + [part[i] | {n - 1}] + part[i + 1:]
        yield part + [{n - 1}]


def congruence_count(G: frozenset, degree: int) -> int:
    count = 0
    for part in set_partitions(degree):
        blocks = [frozenset(b) for b in part]
        if all(frozenset(g[x] for x in b) in blocks for g in G for b in blocks):
            count += 1
    return count


def subgroup_classes(G: frozenset) -> list[int]:
    """Orders of conjugacy classes of subgroups, from closures of element pairs."""
    elems = sorted(G)
    degree = len(elems[0])
    subs = {closure([a, b], degree) for a in elems for b in elems}
    classes = set()
    for S in subs:
        conj = min(tuple(sorted(compose(compose(g, h), _inverse(g)) for h in S)) for g in G)
        classes.add(conj)
    return sorted(len(c) for c in classes)
