"""Finite permutation groups by brute force.

Points are 0-based. A permutation is stored as its image tuple, and
``(g * h)(x) == g(h(x))``. Groups keep their generators and compute the full
element set on first use, which is then cached.
"""

from __future__ import annotations

import itertools
import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import DegreeMismatch, LimitExceeded, NotACongruence

DEFAULT_ORDER_LIMIT = 10**6
MAX_CONGRUENCE_DEGREE = 10
MAX_SUBGROUP_SEARCH_ORDER = 1000

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _compose(a: tuple, b: tuple) -> tuple:
    return tuple(a[i] for i in b)


def _invert(a: tuple) -> tuple:
    inv = [0] * len(a)
    for i, j in enumerate(a):
        inv[j] = i
    return tuple(inv)


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        if not imgs:
            raise ValueError("permutation needs degree >= 1")
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a bijection: {imgs}")
        object.__setattr__(self, "images", imgs)

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        imgs = list(range(degree))
        seen = set()
        for cyc in cycles:
            for p in cyc:
                if not 0 <= p < degree:
                    raise ValueError(f"point {p} outside degree {degree}")
                if p in seen:
                    raise ValueError(f"point {p} repeated in cycle notation")
                seen.add(p)
            for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                imgs[a] = b
        return cls(tuple(imgs))

    @classmethod
    def parse(cls, text: str, degree: int) -> Permutation:
        """Parse cycle notation such as ``"(0 1 2)(3 4)"``; ``"()"`` is the identity."""
        stripped = text.strip()
        if _CYCLE_RE.sub("", stripped).strip():
            raise ValueError(f"malformed cycle notation: {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(stripped):
            parts = body.replace(",", " ").split()
            if parts:
                cycles.append([int(p) for p in parts])
        return cls.from_cycles(cycles, degree)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise DegreeMismatch(f"{self.degree} vs {other.degree}")
        return Permutation(_compose(self.images, other.images))

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else self.inverse()
        out = Permutation.identity(self.degree)
        for _ in range(abs(k)):
            out = base * out
        return out

    def inverse(self) -> Permutation:
        return Permutation(_invert(self.images))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            nxt = self.images[start]
            while nxt != start:
                cyc.append(nxt)
                seen[nxt] = True
                nxt = self.images[nxt]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles(include_fixed=True)))

    def order(self) -> int:
        return math.lcm(*self.cycle_type())

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({self})"


@dataclass(eq=False)
class FiniteGroup:
    """Permutation group on ``range(degree)`` given by generators."""

    degree: int
    generators: tuple[Permutation, ...] = ()
    order_limit: int = DEFAULT_ORDER_LIMIT
    _elements: tuple | None = field(default=None, repr=False)
    _element_set: frozenset | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be positive")
        gens = tuple(self.generators)
        for g in gens:
            if g.degree != self.degree:
                raise DegreeMismatch(f"generator {g} has degree {g.degree}, expected {self.degree}")
        self.generators = gens

    @property
    def raw_generators(self) -> list[tuple]:
        return [g.images for g in self.generators]

    def _ensure(self):
        if self._element_set is None:
            elems = _closure_raw(self.raw_generators, self.degree, self.order_limit)
            self._elements = tuple(sorted(elems))
            self._element_set = frozenset(elems)

    @property
    def raw_elements(self) -> tuple:
        self._ensure()
        return self._elements

    @property
    def element_set(self) -> frozenset:
        self._ensure()
        return self._element_set

    def elements(self) -> list[Permutation]:
        return [Permutation(e) for e in self.raw_elements]

    @property
    def order(self) -> int:
        return len(self.element_set)

    def __contains__(self, perm: Permutation | tuple) -> bool:
        imgs = perm.images if isinstance(perm, Permutation) else tuple(perm)
        return imgs in self.element_set

    def __len__(self) -> int:
        return self.order

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements())

    def same_elements(self, other: FiniteGroup) -> bool:
        return self.degree == other.degree and self.element_set == other.element_set

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def to_json(self) -> dict:
        return {"degree": self.degree, "generators": [str(g) for g in self.generators]}

    @classmethod
    def from_json(cls, data: dict | str, order_limit: int = DEFAULT_ORDER_LIMIT) -> FiniteGroup:
        if isinstance(data, str):
            data = json.loads(data)
        deg = int(data["degree"])
        gens = tuple(Permutation.parse(s, deg) for s in data.get("generators", []))
        return cls(deg, gens, order_limit)

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        return f"FiniteGroup(degree={self.degree}, generators=[{gens}])"


def _closure_raw(gens: list[tuple], degree: int, order_limit: int) -> set:
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    gens = [g for g in gens if g != ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _compose(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > order_limit:
                        raise LimitExceeded(f"group order exceeds {order_limit}")
        frontier = nxt
    return seen


def closure(gens: Sequence[Permutation], order_limit: int = DEFAULT_ORDER_LIMIT,
            degree: int | None = None) -> FiniteGroup:
    """Generate the group and cache its elements, sorted by image sequence."""
    if order_limit < 1:
        raise ValueError("order_limit must be >= 1")
    gens = list(gens)
    if degree is None:
        if not gens:
            raise ValueError("degree required when there are no generators")
        degree = gens[0].degree
    grp = FiniteGroup(degree, tuple(gens), order_limit)
    grp._ensure()
    return grp


def group_from_cycles(degree: int, *cycle_strings: str, order_limit: int = DEFAULT_ORDER_LIMIT) -> FiniteGroup:
    return FiniteGroup(degree, tuple(Permutation.parse(s, degree) for s in cycle_strings), order_limit)


def _group_from_raw(raw: Iterable[tuple], degree: int) -> FiniteGroup:
    """Wrap a known closed element set, choosing a small generating set greedily."""
    elems = frozenset(raw)
    ident = tuple(range(degree))
    gens: list[tuple] = []
    span = {ident}
    # larger element orders first tends to need fewer generators
    for e in sorted(elems, key=lambda p: (-Permutation(p).order(), p)):
        if e not in span:
            gens.append(e)
            span = _closure_raw(gens, degree, len(elems) + 1)
            if len(span) == len(elems):
                break
    grp = FiniteGroup(degree, tuple(Permutation(g) for g in gens), max(len(elems), 1))
    grp._elements = tuple(sorted(elems))
    grp._element_set = elems
    return grp


def group_from_elements(raw: Iterable[tuple], degree: int) -> FiniteGroup:
    """A group whose full element set is already known (it must be closed)."""
    return _group_from_raw(raw, degree)


# -- named groups -------------------------------------------------------------

@lru_cache(maxsize=None)
def symmetric_group(n: int) -> FiniteGroup:
    if n <= 1:
        return FiniteGroup(max(n, 1))
    gens = [Permutation.from_cycles([(0, 1)], n)]
    if n > 2:
        gens.append(Permutation.from_cycles([tuple(range(n))], n))
    return FiniteGroup(n, tuple(gens))


@lru_cache(maxsize=None)
def alternating_group(n: int) -> FiniteGroup:
    if n <= 2:
        return FiniteGroup(max(n, 1))
    gens = [Permutation.from_cycles([(0, 1, i)], n) for i in range(2, n)]
    return FiniteGroup(n, tuple(gens))


def cyclic_group(n: int) -> FiniteGroup:
    if n == 1:
        return FiniteGroup(1)
    return FiniteGroup(n, (Permutation.from_cycles([tuple(range(n))], n),))


def trivial_group(n: int) -> FiniteGroup:
    return FiniteGroup(n)


# -- orbit counting ------------------------------------------------------------

@dataclass(frozen=True)
class OrbitCounts:
    u: int
    l: int  # noqa: E741
    o: int


@lru_cache(maxsize=None)
def stirling2_row(n: int) -> tuple[int, ...]:
    """Row ``n`` of the Stirling numbers of the second kind, indices 0..n."""
    row = [1]
    for m in range(1, n + 1):
        prev = row + [0]
        row = [0] * (m + 1)
        for k in range(1, m + 1):
            row[k] = k * prev[k] + prev[k - 1]
    return tuple(row)


def stirling2(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return stirling2_row(n)[k]


def _count_orbits_by_generators(points: Iterable[tuple], gens: list[tuple], act) -> int:
    """Connected components of the generator action graph on ``points``."""
    seen = set()
    count = 0
    for p in points:
        if p in seen:
            continue
        count += 1
        seen.add(p)
        stack = [p]
        while stack:
            q = stack.pop()
            for g in gens:
                r = act(g, q)
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
    return count


def _act_tuple(g: tuple, t: tuple) -> tuple:
    return tuple(g[i] for i in t)


def canonical_subset(G: FiniteGroup, subset: Iterable[int]) -> tuple[int, ...]:
    """Least sorted image of ``subset`` under the cached elements of G."""
    s = tuple(subset)
    return min(tuple(sorted(g[i] for i in s)) for g in G.raw_elements)


def subset_orbit_count(G: FiniteGroup, n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > G.degree:
        return 0
    return _count_orbits_by_generators(
        itertools.combinations(range(G.degree), n), G.raw_generators,
        lambda g, s: tuple(sorted(g[i] for i in s)))


def injective_tuple_orbit_count(G: FiniteGroup, n: int) -> int:
    if n > G.degree:
        return 0
    return _count_orbits_by_generators(
        itertools.permutations(range(G.degree), n), G.raw_generators, _act_tuple)


def tuple_orbit_count(G: FiniteGroup, n: int) -> int:
    return _count_orbits_by_generators(
        itertools.product(range(G.degree), repeat=n), G.raw_generators, _act_tuple)


def orbit_counts(G: FiniteGroup, n: int) -> OrbitCounts:
    """Orbits on n-subsets, injective n-tuples, and all n-tuples."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return OrbitCounts(1, 1, 1)
    return OrbitCounts(subset_orbit_count(G, n), injective_tuple_orbit_count(G, n),
                       tuple_orbit_count(G, n))


def burnside_orbit_counts(G: FiniteGroup, n: int) -> OrbitCounts:
    """Same three counts by averaging fixed points over the cached elements."""
    if n == 0:
        return OrbitCounts(1, 1, 1)
    tot_u = tot_l = tot_o = 0
    for g in G.raw_elements:
        perm = Permutation(g)
        lengths = [len(c) for c in perm.cycles(include_fixed=True)]
        poly = [1] + [0] * n
        for c in lengths:
            for k in range(n, c - 1, -1):
                poly[k] += poly[k - c]
        fixed = lengths.count(1)
        tot_u += poly[n]
        tot_l += math.perm(fixed, n) if n <= fixed else 0
        tot_o += fixed ** n
    order = G.order
    return OrbitCounts(tot_u // order, tot_l // order, tot_o // order)


def is_highly_set_transitive(G: FiniteGroup) -> bool:
    return all(subset_orbit_count(G, k) == 1 for k in range(G.degree // 2 + 1))


# -- subgroup relations -------------------------------------------------------

@dataclass(frozen=True)
class GroupRelations:
    is_subgroup: bool
    is_normal: bool
    index: int | None


def group_relations(N: FiniteGroup, G: FiniteGroup) -> GroupRelations:
    if N.degree != G.degree:
        raise DegreeMismatch(f"{N.degree} vs {G.degree}")
    gset = G.element_set
    if not all(g in gset for g in N.raw_generators):
        return GroupRelations(False, False, None)
    nset = N.element_set
    normal = True
    for g in G.raw_generators:
        ginv = _invert(g)
        for h in N.raw_generators:
            if _compose(_compose(g, h), ginv) not in nset:
                normal = False
                break
        if not normal:
            break
    return GroupRelations(True, normal, G.order // N.order)


def is_subgroup(N: FiniteGroup, G: FiniteGroup) -> bool:
    return group_relations(N, G).is_subgroup


def is_normal(N: FiniteGroup, G: FiniteGroup) -> bool:
    return group_relations(N, G).is_normal


def normalizes(perm: Permutation, G: FiniteGroup) -> bool:
    gset = G.element_set
    p, pinv = perm.images, _invert(perm.images)
    return all(_compose(_compose(p, h), pinv) in gset for h in G.raw_generators)


# -- constructions ------------------------------------------------------------

def direct_product(*groups: FiniteGroup) -> FiniteGroup:
    """Disjoint-union action; factor i occupies a contiguous block of points."""
    if not groups:
        raise ValueError("need at least one factor")
    degree = sum(g.degree for g in groups)
    gens = []
    offset = 0
    for grp in groups:
        for g in grp.generators:
            imgs = list(range(degree))
            for i, j in enumerate(g.images):
                imgs[offset + i] = offset + j
            gens.append(Permutation(tuple(imgs)))
        offset += grp.degree
    return FiniteGroup(degree, tuple(gens))


def wreath_point(x: int, y: int, inner_degree: int) -> int:
    """Index of the pair (x, y) in the wreath domain; fiber y is a block."""
    return x + inner_degree * y


def wreath(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """G wr H acting on Dom(G) x Dom(H) via (x, y) -> (a_y(x), b(y))."""
    dg, dh = G.degree, H.degree
    degree = dg * dh
    gens = []
    for g in G.generators:
        imgs = list(range(degree))
        for x in range(dg):
            imgs[wreath_point(x, 0, dg)] = wreath_point(g(x), 0, dg)
        gens.append(Permutation(tuple(imgs)))
    for h in H.generators:
        imgs = [wreath_point(x, h(y), dg) for y in range(dh) for x in range(dg)]
        gens.append(Permutation(tuple(imgs)))
    return FiniteGroup(degree, tuple(gens))


def fiber_partition(inner_degree: int, outer_degree: int) -> CongruencePartition:
    return CongruencePartition.from_classes(
        [i // inner_degree for i in range(inner_degree * outer_degree)])


def _check_invariant_set(G: FiniteGroup, points: set[int]) -> None:
    for g in G.raw_generators:
        if any(g[p] not in points for p in points):
            raise ValueError("point set is not invariant under the group")


def restriction(G: FiniteGroup, points: Iterable[int]) -> FiniteGroup:
    """Action of G on an invariant subset, relabelled by sorted position."""
    pts = sorted(set(points))
    _check_invariant_set(G, set(pts))
    pos = {p: i for i, p in enumerate(pts)}
    gens = []
    seen = set()
    for g in G.raw_generators:
        r = tuple(pos[g[p]] for p in pts)
        if r not in seen:
            seen.add(r)
            gens.append(Permutation(r))
    return FiniteGroup(len(pts), tuple(gens), G.order_limit)


def pointwise_stabilizer(G: FiniteGroup, points: Iterable[int]) -> FiniteGroup:
    pts = list(points)
    return _group_from_raw([g for g in G.raw_elements if all(g[p] == p for p in pts)], G.degree)


def setwise_stabilizer(G: FiniteGroup, points: Iterable[int]) -> FiniteGroup:
    pts = set(points)
    return _group_from_raw([g for g in G.raw_elements if all(g[p] in pts for p in pts)], G.degree)


@dataclass(frozen=True)
class CongruencePartition:
    degree: int
    class_of: tuple[int, ...]
    class_count: int

    def __post_init__(self):
        if len(self.class_of) != self.degree:
            raise ValueError("class_of length must equal degree")
        if sorted(set(self.class_of)) != list(range(self.class_count)):
            raise ValueError("class indices must be contiguous and nonempty")

    @classmethod
    def from_classes(cls, labels: Sequence) -> CongruencePartition:
        """Relabel arbitrary labels in order of first appearance."""
        relabel: dict = {}
        out = []
        for lab in labels:
            if lab not in relabel:
                relabel[lab] = len(relabel)
            out.append(relabel[lab])
        return cls(len(out), tuple(out), len(relabel))

    def classes(self) -> list[tuple[int, ...]]:
        buckets: list[list[int]] = [[] for _ in range(self.class_count)]
        for p, c in enumerate(self.class_of):
            buckets[c].append(p)
        return [tuple(b) for b in buckets]


def _induced_class_map(g: tuple, E: CongruencePartition) -> tuple | None:
    img = [None] * E.class_count
    for p, c in enumerate(E.class_of):
        t = E.class_of[g[p]]
        if img[c] is None:
            img[c] = t
        elif img[c] != t:
            return None
    return tuple(img)


def is_congruence(G: FiniteGroup, E: CongruencePartition) -> bool:
    return all(_induced_class_map(g, E) is not None for g in G.raw_generators)


@dataclass
class Quotient:
    """G/E with the projection g -> g/E."""

    group: FiniteGroup
    congruence: CongruencePartition

    def project(self, g: Permutation) -> Permutation:
        img = _induced_class_map(g.images, self.congruence)
        if img is None:
            raise NotACongruence(f"{g} does not preserve the partition")
        return Permutation(img)


def quotient_by_congruence(G: FiniteGroup, E: CongruencePartition) -> Quotient:
    if E.degree != G.degree:
        raise DegreeMismatch(f"{E.degree} vs {G.degree}")
    gens = []
    for g in G.raw_generators:
        img = _induced_class_map(g, E)
        if img is None:
            raise NotACongruence(f"{Permutation(g)} does not preserve the partition")
        gens.append(Permutation(img))
    return Quotient(FiniteGroup(E.class_count, tuple(gens), G.order_limit), E)


def construct(kind: str, *args) -> FiniteGroup:
    """Dispatch by construction name; quotients return only the group."""
    table = {
        "direct_product": direct_product,
        "wreath": wreath,
        "restriction": restriction,
        "pointwise_stab": pointwise_stabilizer,
        "setwise_stab": setwise_stabilizer,
        "quotient": lambda G, E: quotient_by_congruence(G, E).group,
    }
    try:
        fn = table[kind]
    except KeyError:
        raise ValueError(f"unknown construction {kind!r}") from None
    return fn(*args)


# -- congruences --------------------------------------------------------------

def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """All set partitions of range(n) as restricted-growth strings."""
    if n == 0:
        yield ()
        return
    s = [0] * n

    def rec(i: int, top: int):
        if i == n:
            yield tuple(s)
            return
        for c in range(top + 2):
            s[i] = c
            yield from rec(i + 1, max(top, c))

    s[0] = 0
    yield from rec(1, 0)


def congruences(G: FiniteGroup, max_degree: int = MAX_CONGRUENCE_DEGREE) -> list[CongruencePartition]:
    if G.degree > max_degree:
        raise LimitExceeded(f"degree {G.degree} exceeds congruence cap {max_degree}")
    out = []
    for rgs in restricted_growth_strings(G.degree):
        E = CongruencePartition(G.degree, rgs, max(rgs) + 1)
        if is_congruence(G, E):
            out.append(E)
    return out


def congruence_count(G: FiniteGroup, max_degree: int = MAX_CONGRUENCE_DEGREE) -> int:
    return len(congruences(G, max_degree))


# -- m-sensitivity ------------------------------------------------------------

@dataclass(frozen=True)
class SensitivityReport:
    holds: bool
    checked_to: int
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds


def _tuple_orbit_ids(G: FiniteGroup, n: int) -> dict[tuple, int]:
    gens = G.raw_generators
    ids: dict[tuple, int] = {}
    oid = -1
    for p in itertools.product(range(G.degree), repeat=n):
        if p in ids:
            continue
        oid += 1
        ids[p] = oid
        stack = [p]
        while stack:
            q = stack.pop()
            for g in gens:
                r = _act_tuple(g, q)
                if r not in ids:
                    ids[r] = oid
                    stack.append(r)
    return ids


def m_sensitivity(G: FiniteGroup, m: int, n_max: int) -> SensitivityReport:
    """Check that m-coordinate projections separate tuple orbits up to length n_max.

    Projections onto fewer than m distinct coordinates carry no extra
    information, and for n <= m a surjective projection always separates, so
    only increasing m-subsets of coordinates are tried for n > m.
    """
    if m < 1:
        raise ValueError("m must be positive")
    orbit_m = _tuple_orbit_ids(G, m) if n_max > m else {}
    for n in range(m + 1, n_max + 1):
        ids = _tuple_orbit_ids(G, n)
        projections = list(itertools.combinations(range(n), m))
        owner: dict[tuple, tuple] = {}
        for t, oid in ids.items():
            sig = tuple(orbit_m[tuple(t[i] for i in p)] for p in projections)
            prev = owner.get(sig)
            if prev is None:
                owner[sig] = t
            elif ids[prev] != oid:
                return SensitivityReport(False, n, (prev, t))
    return SensitivityReport(True, n_max)


# -- subgroup classes ---------------------------------------------------------

def _conjugacy_class_of_subgroup(elements: frozenset, G: FiniteGroup) -> set[frozenset]:
    out = set()
    for g in G.raw_elements:
        ginv = _invert(g)
        out.add(frozenset(_compose(_compose(g, h), ginv) for h in elements))
    return out


def all_subgroups_up_to_conjugacy(G: FiniteGroup,
                                  max_order: int = MAX_SUBGROUP_SEARCH_ORDER) -> list[FiniteGroup]:
    """One representative per conjugacy class, by cyclic extension of representatives."""
    if G.order > max_order:
        raise LimitExceeded(f"group order {G.order} exceeds subgroup search cap {max_order}")
    deg = G.degree
    ident = tuple(range(deg))
    trivial = frozenset({ident})
    reps = [trivial]
    known = {trivial}
    queue = [(trivial, [])]
    while queue:
        R, rgens = queue.pop(0)
        done = set(R)
        rlist = list(R)
        for g in G.raw_elements:
            if g in done:
                continue
            for a in rlist:
                for b in rlist:
                    done.add(_compose(_compose(a, g), b))
            M = frozenset(_closure_raw(rgens + [g], deg, G.order))
            if M in known:
                continue
            known |= _conjugacy_class_of_subgroup(M, G)
            reps.append(M)
            queue.append((M, rgens + [g]))
    reps.sort(key=lambda s: (len(s), sorted(s)))
    return [_group_from_raw(r, deg) for r in reps]


def describe_cycle_types(G: FiniteGroup) -> Counter:
    return Counter(Permutation(g).cycle_type() for g in G.raw_elements)
