"""Finite covers: analysis, the kernel constructor, lifting from descent data,
decomposition back into a linked cover plus descent data, and finite truncations."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DegreeMismatch, InconsistentDescent, InvalidCover, LimitExceeded, NotNormalizing
from .permgrp import (MAX_SUBGROUP_SEARCH_ORDER, CongruencePartition, FiniteGroup, Permutation,
                      _compose, _induced_class_map, _invert, all_subgroups_up_to_conjugacy,
                      closure, group_from_elements, symmetric_group)

MAX_PERMUTATION_DEGREE = 5


# -- the cover type -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FiniteCover:
    """``total`` acts on X, ``base`` on X*, and ``pi`` maps each point of X to X*."""

    total: FiniteGroup
    base: FiniteGroup
    pi: tuple[int, ...]

    def __post_init__(self):
        pi = tuple(int(p) for p in self.pi)
        object.__setattr__(self, "pi", pi)
        if len(pi) != self.total.degree:
            raise InvalidCover(f"projection has {len(pi)} entries for degree {self.total.degree}")
        if sorted(set(pi)) != list(range(self.base.degree)):
            raise InvalidCover("projection must be onto the base domain")

    @property
    def fibers(self) -> list[tuple[int, ...]]:
        out: list[list[int]] = [[] for _ in range(self.base.degree)]
        for x, a in enumerate(self.pi):
            out[a].append(x)
        return [tuple(f) for f in out]

    @property
    def partition(self) -> CongruencePartition:
        return CongruencePartition(len(self.pi), self.pi, self.base.degree)

    def mu(self, g: tuple) -> tuple:
        """Induced base permutation of a raw element of ``total``."""
        img = _induced_class_map(g, self.partition)
        if img is None:
            raise InvalidCover(f"{Permutation(g)} does not preserve the fibers")
        return img

    def check(self) -> FiniteCover:
        """Raise unless the fibers are blocks and the induced group is exactly ``base``."""
        induced = [Permutation(self.mu(g)) for g in self.total.raw_generators]
        image = closure(induced, degree=self.base.degree)
        if image.element_set != self.base.element_set:
            raise InvalidCover("the induced action on fibers is not the base group")
        return self

    def to_json(self) -> dict:
        return {"total": self.total.to_json(), "base": self.base.to_json(), "pi": list(self.pi)}

    @classmethod
    def from_json(cls, data: dict | str) -> FiniteCover:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(FiniteGroup.from_json(data["total"]), FiniteGroup.from_json(data["base"]),
                   tuple(data["pi"]))

    @classmethod
    def from_congruence(cls, G: FiniteGroup, E: CongruencePartition) -> FiniteCover:
        cover = cls(G, FiniteGroup(E.class_count), E.class_of)
        induced = tuple(Permutation(cover.mu(g)) for g in G.raw_generators)
        return cls(G, FiniteGroup(E.class_count, induced), E.class_of)


def base_orbits(base: FiniteGroup) -> list[tuple[int, ...]]:
    """Orbits of the base group, each sorted, ordered by least element."""
    seen: set[int] = set()
    out = []
    for a in range(base.degree):
        if a in seen:
            continue
        orb = {a}
        stack = [a]
        while stack:
            b = stack.pop()
            for g in base.raw_generators:
                if g[b] not in orb:
                    orb.add(g[b])
                    stack.append(g[b])
        seen |= orb
        out.append(tuple(sorted(orb)))
    return out


def _local(fiber: Sequence[int], g: tuple) -> tuple:
    pos = {p: i for i, p in enumerate(fiber)}
    return tuple(pos[g[p]] for p in fiber)


# -- analysis -------------------------------------------------------------------

@dataclass(frozen=True)
class FiberGroups:
    point: int
    fiber: tuple[int, ...]
    fiber_group: FiniteGroup
    binding: FiniteGroup
    pointwise_binding: FiniteGroup


@dataclass(frozen=True)
class CoverAnalysis:
    fibers: tuple[FiberGroups, ...]
    kernel: FiniteGroup
    trivial: bool
    strongly_trivial: bool
    split: bool | None
    strongly_split: bool | None
    linked: bool
    finite_fiber_factors: bool = True

    @property
    def undecided(self) -> bool:
        return self.split is None


def _fiber_groups(c: FiniteCover, elements: Sequence[tuple], kernel: Sequence[tuple]
                  ) -> list[FiberGroups]:
    out = []
    for a, fib in enumerate(c.fibers):
        fset = set(fib)
        rest = [x for x in range(c.total.degree) if x not in fset]
        k = len(fib)
        stab = {_local(fib, g) for g in elements if all(g[p] in fset for p in fib)}
        bind = {_local(fib, g) for g in kernel}
        pw = {_local(fib, g) for g in elements if all(g[x] == x for x in rest)}
        out.append(FiberGroups(a, fib, group_from_elements(stab, k), group_from_elements(bind, k),
                               group_from_elements(pw, k)))
    return out


def _fiber_groups_trivial(c: FiniteCover, elements: Iterable[tuple]) -> bool:
    fibers = c.fibers
    for g in elements:
        for fib in fibers:
            if g[fib[0]] in fib and any(g[p] != p for p in fib):
                return False
    return True


def analyze(c: FiniteCover, max_search_order: int = MAX_SUBGROUP_SEARCH_ORDER) -> CoverAnalysis:
    """Fiber, binding and pointwise binding groups plus the split predicates."""
    c.check()
    elements = c.total.raw_elements
    ident = tuple(range(c.base.degree))
    kernel = [g for g in elements if c.mu(g) == ident]
    fibers = _fiber_groups(c, elements, kernel)
    trivial = len(kernel) == 1
    strongly_trivial = all(f.fiber_group.order == 1 for f in fibers)
    linked = all(f.pointwise_binding.order == 1 for f in fibers)
    if trivial:
        split, strongly = True, strongly_trivial
    elif c.total.order > max_search_order:
        split = strongly = None
    else:
        kset = set(kernel)
        complements = [K for K in all_subgroups_up_to_conjugacy(c.total, max_search_order)
                       if K.order == c.base.order
                       and not any(k in kset for k in K.raw_elements if k != tuple(range(len(k))))]
        split = bool(complements)
        strongly = any(_fiber_groups_trivial(c, K.raw_elements) for K in complements)
    return CoverAnalysis(tuple(fibers), group_from_elements(kernel, c.total.degree), trivial,
                         strongly_trivial, split, strongly, linked)


# -- kernel constructor -----------------------------------------------------------

def kappa(sigma: Permutation, S: Iterable[int], base_size: int) -> Permutation:
    """Acts as sigma on the fibers over S and as the identity elsewhere."""
    k = sigma.degree
    S = set(S)
    imgs = []
    for a in range(base_size):
        for f in range(k):
            imgs.append(a * k + (sigma(f) if a in S else f))
    return Permutation(tuple(imgs))


def kernel_LH(fiber_size: int, H: FiniteGroup, L: FiniteGroup, base_size: int) -> FiniteGroup:
    """Fiber permutations all in L and all in one H-coset; point (f, a) is f + fiber_size*a."""
    if H.degree != fiber_size or L.degree != fiber_size:
        raise DegreeMismatch(f"H, L must act on {fiber_size} points")
    gens = [kappa(h, {a}, base_size) for h in H.generators for a in range(base_size)]
    gens += [kappa(ell, range(base_size), base_size) for ell in L.generators]
    return FiniteGroup(fiber_size * base_size, tuple(gens))


def base_lift(fiber_size: int, base: FiniteGroup) -> list[Permutation]:
    """Generators of id(F) wr base: fibers move rigidly along the base."""
    k = fiber_size
    return [Permutation(tuple(g[a] * k + f for a in range(base.degree) for f in range(k)))
            for g in base.raw_generators]


def split_cover(fiber_size: int, H: FiniteGroup, L: FiniteGroup, base: FiniteGroup) -> FiniteCover:
    """Kernel of the given shape extended by the rigid base lift."""
    K = kernel_LH(fiber_size, H, L, base.degree)
    total = FiniteGroup(K.degree, K.generators + tuple(base_lift(fiber_size, base)))
    return FiniteCover(total, base, tuple(x // fiber_size for x in range(K.degree)))


# -- normalisation ---------------------------------------------------------------

@dataclass(frozen=True)
class Normalized:
    cover: FiniteCover
    relabel: tuple[int, ...]
    offsets: tuple[int, ...]


def _offsets(sizes: Sequence[int]) -> tuple[int, ...]:
    return tuple(itertools.accumulate([0] + list(sizes[:-1])))


def normalize(c: FiniteCover) -> Normalized:
    """Relabel X as pairs (f, a), identifying fibers along base orbits by transport."""
    c.check()
    fibers = c.fibers
    gens = c.total.raw_generators
    transport: dict[int, tuple] = {}
    for orbit in base_orbits(c.base):
        a0 = orbit[0]
        transport[a0] = tuple(range(c.total.degree))
        queue = [a0]
        while queue:
            b = queue.pop(0)
            for g in gens:
                nb = c.mu(g)[b]
                if nb not in transport:
                    transport[nb] = _compose(g, transport[b])
                    queue.append(nb)
    rep_of = {a: orb[0] for orb in base_orbits(c.base) for a in orb}
    offsets = _offsets([len(f) for f in fibers])
    relabel = [0] * c.total.degree
    for a, fib in enumerate(fibers):
        rep_fiber = fibers[rep_of[a]]
        inv = _invert(transport[a])
        pos = {p: i for i, p in enumerate(rep_fiber)}
        for p in fib:
            relabel[p] = offsets[a] + pos[inv[p]]
    rel = tuple(relabel)
    inv_rel = _invert(rel)
    new_gens = tuple(Permutation(tuple(rel[g[inv_rel[y]]] for y in range(len(rel)))) for g in gens)
    pi = tuple(c.pi[inv_rel[y]] for y in range(len(rel)))
    return Normalized(FiniteCover(FiniteGroup(len(rel), new_gens), c.base, pi), rel, offsets)


def _is_block_layout(c: FiniteCover) -> tuple[int, ...] | None:
    fibers = c.fibers
    offsets = _offsets([len(f) for f in fibers])
    for a, fib in enumerate(fibers):
        if fib != tuple(range(offsets[a], offsets[a] + len(fib))):
            return None
    return offsets


def eta(c: FiniteCover, offsets: Sequence[int], g: tuple, a: int) -> tuple:
    """Local action of g from the fiber over a to the fiber over its image."""
    b = c.pi[g[offsets[a]]]
    k = len(c.fibers[a])
    return tuple(g[offsets[a] + f] - offsets[b] for f in range(k))


def is_normalized(c: FiniteCover) -> bool:
    offsets = _is_block_layout(c)
    if offsets is None:
        return False
    elements = c.total.raw_elements
    fibers = c.fibers
    for orbit in base_orbits(c.base):
        a = orbit[0]
        for b in orbit[1:]:
            if len(fibers[b]) != len(fibers[a]):
                return False
            k = len(fibers[a])
            if not any(all(g[offsets[a] + f] == offsets[b] + f for f in range(k)) for g in elements):
                return False
    return True


# -- descent data and the lift -----------------------------------------------------

@dataclass(frozen=True)
class Descent:
    """B normal in F and a homomorphism F -> P given by the images of F's generators."""

    B: FiniteGroup
    F: FiniteGroup
    phi: tuple[Permutation, ...]

    def table(self) -> dict[tuple, tuple]:
        return hom_table(self.F, self.phi)

    def to_json(self) -> dict:
        return {"B": self.B.to_json(), "F": self.F.to_json(), "phi": [str(p) for p in self.phi],
                "target_degree": self.phi[0].degree if self.phi else 1}

    @classmethod
    def from_json(cls, data: dict) -> Descent:
        B = FiniteGroup.from_json(data["B"])
        F = FiniteGroup.from_json(data["F"])
        d = int(data.get("target_degree", 1))
        return cls(B, F, tuple(Permutation.parse(s, d) for s in data["phi"]))


@dataclass(frozen=True)
class DescentData:
    """One descent record per base orbit, orbits ordered by least point."""

    per_orbit: tuple[Descent, ...]

    def at(self, base: FiniteGroup) -> dict[int, Descent]:
        orbits = base_orbits(base)
        if len(orbits) != len(self.per_orbit):
            raise InconsistentDescent(f"{len(self.per_orbit)} records for {len(orbits)} base orbits")
        return {a: d for orb, d in zip(orbits, self.per_orbit) for a in orb}

    def to_json(self) -> list:
        return [d.to_json() for d in self.per_orbit]

    @classmethod
    def from_json(cls, data: list | str) -> DescentData:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(Descent.from_json(d) for d in data))


def hom_table(F: FiniteGroup, images: Sequence[Permutation]) -> dict[tuple, tuple]:
    """Extend generator images to all of F, failing if that is not a homomorphism."""
    if len(images) != len(F.generators):
        raise InconsistentDescent("one image per generator is required")
    if not images:
        return {g: (0,) for g in F.raw_elements}
    d = images[0].degree
    gens = list(zip(F.raw_generators, (p.images for p in images)))
    table = {tuple(range(F.degree)): tuple(range(d))}
    queue = [tuple(range(F.degree))]
    while queue:
        x = queue.pop()
        for g, gi in gens:
            y, yi = _compose(g, x), _compose(gi, table[x])
            old = table.get(y)
            if old is None:
                table[y] = yi
                queue.append(y)
            elif old != yi:
                raise InconsistentDescent("generator images do not define a homomorphism")
    return table


def _check_descent(D: Descent, target: FiniteGroup) -> dict[tuple, tuple]:
    table = D.table()
    image = set(table.values())
    if image != set(target.raw_elements):
        raise InconsistentDescent("the homomorphism is not onto the fiber group")
    ident = tuple(range(target.degree))
    kernel = {g for g, v in table.items() if v == ident}
    if kernel != set(D.B.raw_elements):
        raise InconsistentDescent("the kernel of the homomorphism is not B")
    return table


def build_lift(Gt: FiniteCover, D: DescentData) -> FiniteCover:
    """The cover whose fiber groups are the F's and pointwise binding groups the B's."""
    if not is_normalized(Gt):
        raise InconsistentDescent("the linked cover must be in normal form")
    an = analyze(Gt, max_search_order=0)
    if not an.linked:
        raise InconsistentDescent("the reference cover is not linked")
    offsets_t = _is_block_layout(Gt)
    at = D.at(Gt.base)
    preimage: dict[int, dict[tuple, tuple]] = {}
    for a in range(Gt.base.degree):
        table = _check_descent(at[a], an.fibers[a].fiber_group)
        inv: dict[tuple, tuple] = {}
        for g in sorted(table):
            inv.setdefault(table[g], g)
        preimage[a] = inv
    sizes = [at[a].F.degree for a in range(Gt.base.degree)]
    offsets = _offsets(sizes)
    degree = sum(sizes)
    pi = tuple(a for a in range(len(sizes)) for _ in range(sizes[a]))
    gens = []
    for g in Gt.total.raw_generators:
        imgs = [0] * degree
        for a in range(len(sizes)):
            b = Gt.pi[g[offsets_t[a]]]
            lifted = preimage[a][eta(Gt, offsets_t, g, a)]
            for u in range(sizes[a]):
                imgs[offsets[a] + u] = offsets[b] + lifted[u]
        gens.append(Permutation(tuple(imgs)))
    for a in range(len(sizes)):
        for bgen in at[a].B.raw_generators:
            imgs = list(range(degree))
            for u in range(sizes[a]):
                imgs[offsets[a] + u] = offsets[a] + bgen[u]
            gens.append(Permutation(tuple(imgs)))
    return FiniteCover(FiniteGroup(degree, tuple(gens)), Gt.base, pi)


# -- decomposition ---------------------------------------------------------------

def _cosets(F: FiniteGroup, K: frozenset) -> list[frozenset]:
    seen: set = set()
    out = []
    for g in F.raw_elements:
        if g in seen:
            continue
        coset = frozenset(_compose(g, k) for k in K)
        seen |= coset
        out.append(coset)
    out.sort(key=min)
    return out


def _core(F: FiniteGroup, K: frozenset) -> frozenset:
    core = set(K)
    for g in F.raw_elements:
        gi = _invert(g)
        core &= {_compose(_compose(g, k), gi) for k in K}
    return frozenset(core)


def _coset_action(F: FiniteGroup, subgroups: Sequence[frozenset]) -> tuple[Permutation, ...]:
    """Images of F's generators acting on the disjoint union of coset spaces."""
    spaces = [_cosets(F, K) for K in subgroups]
    images = []
    for g in F.raw_generators:
        imgs = []
        offset = 0
        for cosets in spaces:
            where = {x: i for i, c in enumerate(cosets) for x in c}
            for c in cosets:
                imgs.append(offset + where[_compose(g, min(c))])
            offset += len(cosets)
        images.append(Permutation(tuple(imgs)))
    return tuple(images)


def quotient_action(F: FiniteGroup, B: FiniteGroup,
                    max_degree: int = MAX_PERMUTATION_DEGREE) -> tuple[Permutation, ...]:
    """A faithful action of F/B: regular, unless that exceeds ``max_degree`` and a
    union of coset spaces with smaller total degree has kernel exactly B."""
    Bset = B.element_set
    index = F.order // B.order
    best: tuple[frozenset, ...] = (Bset,)
    if index > max_degree and F.order <= MAX_SUBGROUP_SEARCH_ORDER:
        cands = []
        for K in all_subgroups_up_to_conjugacy(F):
            Kset = K.element_set
            if Bset <= Kset and K.order < F.order:
                cands.append((F.order // K.order, Kset, _core(F, Kset)))
        best_deg = index
        for r in (1, 2, 3):
            for combo in itertools.combinations(cands, r):
                deg = sum(c[0] for c in combo)
                if deg >= best_deg:
                    continue
                core = frozenset.intersection(*(c[2] for c in combo))
                if core == Bset:
                    best_deg, best = deg, tuple(c[1] for c in combo)
    if not F.generators:
        return ()
    return _coset_action(F, best)


def decompose(c: FiniteCover) -> tuple[FiniteCover, DescentData]:
    """A linked cover and descent data whose lift is isomorphic to ``c``."""
    nc = normalize(c).cover
    an = analyze(nc, max_search_order=0)
    offsets = _is_block_layout(nc)
    records = []
    tables: dict[int, dict[tuple, tuple]] = {}
    degs: dict[int, int] = {}
    for orbit in base_orbits(nc.base):
        fg = an.fibers[orbit[0]]
        F, B = fg.fiber_group, fg.pointwise_binding
        phi = quotient_action(F, B)
        if not phi:
            phi = tuple(Permutation.identity(1) for _ in F.generators)
        record = Descent(B, F, phi)
        table = record.table()
        deg = phi[0].degree if phi else 1
        records.append(record)
        for a in orbit:
            tables[a] = table
            degs[a] = deg
    sizes = [degs[a] for a in range(nc.base.degree)]
    t_offsets = _offsets(sizes)
    degree = sum(sizes)
    gens = []
    for g in nc.total.raw_generators:
        imgs = [0] * degree
        for a in range(nc.base.degree):
            b = nc.pi[g[offsets[a]]]
            local = tables[a][eta(nc, offsets, g, a)]
            for u in range(sizes[a]):
                imgs[t_offsets[a] + u] = t_offsets[b] + local[u]
        gens.append(Permutation(tuple(imgs)))
    pi = tuple(a for a in range(len(sizes)) for _ in range(sizes[a]))
    Gt = FiniteCover(FiniteGroup(degree, tuple(gens)), nc.base, pi)
    return Gt, DescentData(tuple(records))


# -- cover isomorphism -----------------------------------------------------------

def _point_orbit_sizes(G: FiniteGroup) -> list[int]:
    size = [0] * G.degree
    seen: set[int] = set()
    for x in range(G.degree):
        if x in seen:
            continue
        orb = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for g in G.raw_generators:
                if g[y] not in orb:
                    orb.add(g[y])
                    stack.append(g[y])
        seen |= orb
        for y in orb:
            size[y] = len(orb)
    return size


def cover_isomorphism(c1: FiniteCover, c2: FiniteCover,
                      node_limit: int = 2_000_000) -> tuple[int, ...] | None:
    """A bijection X1 -> X2 sending fibers to fibers and conjugating total1 onto total2."""
    if (c1.total.degree != c2.total.degree or c1.base.degree != c2.base.degree
            or c1.total.order != c2.total.order
            or sorted(map(len, c1.fibers)) != sorted(map(len, c2.fibers))):
        return None
    n = c1.total.degree
    sig1 = [(s, len(c1.fibers[c1.pi[x]])) for x, s in enumerate(_point_orbit_sizes(c1.total))]
    sig2 = [(s, len(c2.fibers[c2.pi[x]])) for x, s in enumerate(_point_orbit_sizes(c2.total))]
    gens = c1.total.raw_generators
    ginv = [_invert(g) for g in gens]
    order = [x for fib in c1.fibers for x in fib]
    e = [-1] * n
    used = [False] * n
    base_map: dict[int, int] = {}
    base_used: set[int] = set()
    nodes = 0

    def filtered(cands, x):
        out = []
        for j, g in enumerate(gens):
            pairs = []
            if e[g[x]] >= 0:
                pairs.append((x, g[x]))
            y = ginv[j][x]
            if e[y] >= 0 and y != x:
                pairs.append((y, x))
            keep = [h for h in cands[j] if all(h[e[p]] == e[q] for p, q in pairs)]
            if not keep:
                return None
            out.append(keep)
        return out

    def rec(i, cands):
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise LimitExceeded(f"cover isomorphism search exceeded {node_limit} nodes")
        if i == n:
            return True
        x = order[i]
        a = c1.pi[x]
        if a in base_map:
            options = [y for y in c2.fibers[base_map[a]] if not used[y]]
        else:
            options = [y for b in range(c2.base.degree) if b not in base_used
                       and len(c2.fibers[b]) == len(c1.fibers[a]) for y in c2.fibers[b]]
        for y in options:
            if sig1[x] != sig2[y]:
                continue
            fresh = a not in base_map
            e[x], used[y] = y, True
            if fresh:
                base_map[a] = c2.pi[y]
                base_used.add(c2.pi[y])
            nxt = filtered(cands, x)
            if nxt is not None and rec(i + 1, nxt):
                return True
            e[x], used[y] = -1, False
            if fresh:
                base_used.discard(base_map.pop(a))
        return False

    start = [list(c2.total.raw_elements) for _ in gens]
    return tuple(e) if rec(0, start) else None


# -- truncated hereditarily cellular builder -----------------------------------------

@dataclass(frozen=True)
class GCal:
    group: FiniteGroup
    point_of: dict = field(repr=False)


def g_cal(H: FiniteGroup, parts: Sequence[Sequence[int]], N_parts: Sequence[FiniteGroup],
          t: int, include_H: bool = True) -> GCal:
    """Copy 0 of part 0 plus t copies of every other part, acted on by N_0, each
    N_i wr Sym(t), and the copy-preserving lifts of H's generators.

    The N_i act on Dom(H) and move only points of their own part.
    """
    if t < 1:
        raise ValueError("t must be positive")
    if len(parts) != len(N_parts) or not parts:
        raise ValueError("one group per part, part 0 first")
    dom = sorted(p for part in parts for p in part)
    if dom != list(range(H.degree)):
        raise ValueError("the parts must partition the domain of H")
    part_of = {p: i for i, part in enumerate(parts) for p in part}
    N_gens = [g for N in N_parts for g in N.generators]
    for i, N in enumerate(N_parts):
        for g in N.raw_generators:
            if any(g[p] != p for p in range(H.degree) if part_of[p] != i):
                raise NotNormalizing(f"a generator of N_{i} moves points outside part {i}")
    N = FiniteGroup(H.degree, tuple(N_gens)) if N_gens else FiniteGroup(H.degree)
    Nset = N.element_set
    for h in H.raw_generators:
        hinv = _invert(h)
        if any(_compose(_compose(h, n), hinv) not in Nset for n in N.raw_generators):
            raise NotNormalizing(f"{Permutation(h)} does not normalize the product of the parts")
        if any(part_of[h[p]] == 0 for p in range(H.degree) if part_of[p] != 0) or \
                any(part_of[h[p]] != 0 for p in parts[0]):
            raise NotNormalizing(f"{Permutation(h)} does not preserve part 0")
    point_of: dict[tuple[int, int], int] = {}
    for p in sorted(parts[0]):
        point_of[(p, 0)] = len(point_of)
    rest = [p for p in range(H.degree) if part_of[p] != 0]
    for j in range(t):
        for p in rest:
            point_of[(p, j)] = len(point_of)
    degree = len(point_of)
    if degree == 0:
        raise ValueError("empty domain")

    def perm(mapping) -> Permutation:
        imgs = list(range(degree))
        for (p, j), x in point_of.items():
            imgs[x] = point_of[mapping(p, j)]
        return Permutation(tuple(imgs))

    gens = []
    for g in N_parts[0].raw_generators:
        gens.append(perm(lambda p, j, g=g: (g[p], j)))
    for i in range(1, len(parts)):
        for g in N_parts[i].raw_generators:
            gens.append(perm(lambda p, j, g=g: (g[p], j) if j == 0 else (p, j)))
        for s in symmetric_group(t).raw_generators:
            gens.append(perm(lambda p, j, s=s, i=i: (p, s[j]) if part_of[p] == i else (p, j)))
    if include_H:
        for h in H.raw_generators:
            gens.append(perm(lambda p, j, h=h: (h[p], j)))
    return GCal(FiniteGroup(degree, tuple(g for g in gens if not g.is_identity())), point_of)


def g_cal_index(H: FiniteGroup, parts, N_parts, t: int) -> int:
    """Index of the truncation without H's lifts in the one with them."""
    big = g_cal(H, parts, N_parts, t).group
    small = g_cal(H, parts, N_parts, t, include_H=False).group
    q, r = divmod(big.order, small.order)
    if r:
        raise NotNormalizing("the truncation without H is not a subgroup")
    return q


# -- omega-partition check -------------------------------------------------------

@dataclass(frozen=True)
class OmegaPartitionReport:
    conditions: dict
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_omega_partition(G: FiniteGroup, K: Iterable[int], nabla: CongruencePartition,
                           delta: CongruencePartition, t: int) -> OmegaPartitionReport:
    """Finite surrogate: every coarse class must split into exactly t fine classes.

    ``nabla`` and ``delta`` are partitions of the complement of K, indexed by the
    sorted positions of its points.
    """
    K = set(K)
    rest = [x for x in range(G.degree) if x not in K]
    pos = {x: i for i, x in enumerate(rest)}
    cond: dict[str, bool] = {}
    cond["K invariant"] = all(g[x] in K for g in G.raw_generators for x in K)
    sizes_ok = nabla.degree == len(rest) and delta.degree == len(rest)
    cond["partitions cover the complement"] = sizes_ok
    if not (cond["K invariant"] and sizes_ok):
        fails = tuple(k for k, v in cond.items() if not v)
        return OmegaPartitionReport(cond, fails)
    local = [tuple(pos[g[x]] for x in rest) for g in G.raw_generators]
    cond["fine partition is a congruence"] = all(_induced_class_map(g, delta) is not None for g in local)
    cond["coarse partition is a congruence"] = all(_induced_class_map(g, nabla) is not None for g in local)
    cond["fine refines coarse"] = all(
        nabla.class_of[i] == nabla.class_of[j]
        for i in range(len(rest)) for j in range(len(rest)) if delta.class_of[i] == delta.class_of[j])
    cond["finitely many coarse classes"] = True
    fine_in: dict[int, set] = {}
    for i in range(len(rest)):
        fine_in.setdefault(nabla.class_of[i], set()).add(delta.class_of[i])
    cond[f"each coarse class holds {t} fine classes"] = all(len(v) == t for v in fine_in.values())
    full = True
    elements = G.raw_elements
    for cls, fines in fine_in.items():
        C = {rest[i] for i in range(len(rest)) if nabla.class_of[i] == cls}
        outside = [x for x in range(G.degree) if x not in C]
        induced = set()
        for g in elements:
            if all(g[x] == x for x in outside):
                induced.add(frozenset((delta.class_of[pos[x]], delta.class_of[pos[g[x]]]) for x in C))
        if len(induced) != math.factorial(len(fines)):
            full = False
    cond["pointwise stabiliser is full symmetric on fine classes"] = full
    return OmegaPartitionReport(cond, tuple(k for k, v in cond.items() if not v))
