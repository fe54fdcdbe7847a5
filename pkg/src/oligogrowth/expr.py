"""Group expressions built from finite groups, cover atoms, direct products and
wreath products with Sym(omega), with exact compositional u-series."""

from __future__ import annotations

import json
import math
import threading
from dataclasses import dataclass
from typing import Union

from .atomseries import atom_series
from .errors import LimitExceeded, NotTruncatable
from .permgrp import (FiniteGroup, direct_product, is_highly_set_transitive, subset_orbit_count,
                      symmetric_group, trivial_group, wreath)
from .qatoms import FiberCoverSpec, require_valid
from .series import DEFAULT_ORDER, OrbitSeries, convolve, euler_transform
from .wordmodel import DEFAULT_BFS_CAP, subset_orbit_series

DEFAULT_SUBSET_BUDGET = 3_000_000


def _group_key(G: FiniteGroup) -> tuple:
    return (G.degree, tuple(sorted(g.images for g in G.generators)))


class _Node:
    """Structural equality and hashing through ``key()``."""

    def key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())


@dataclass(frozen=True, eq=False)
class Finite(_Node):
    group: FiniteGroup

    def key(self) -> tuple:
        return ("fin",) + _group_key(self.group)


@dataclass(frozen=True, eq=False)
class Atom(_Node):
    spec: FiberCoverSpec

    def key(self) -> tuple:
        return ("atom",) + self.spec.key()


@dataclass(frozen=True, eq=False)
class Prod(_Node):
    children: tuple

    def __post_init__(self):
        kids = tuple(self.children)
        if not kids:
            raise ValueError("a product needs at least one factor")
        object.__setattr__(self, "children", kids)

    def key(self) -> tuple:
        return ("prod",) + tuple(c.key() for c in self.children)


@dataclass(frozen=True, eq=False)
class WrOmega(_Node):
    child: GroupExpr

    def key(self) -> tuple:
        return ("wr", self.child.key())


GroupExpr = Union[Finite, Atom, Prod, WrOmega]


def triv() -> Finite:
    """The identity group on one point."""
    return Finite(trivial_group(1))


def atoms_of(e: GroupExpr) -> list[FiberCoverSpec]:
    if isinstance(e, Atom):
        return [e.spec]
    if isinstance(e, Prod):
        return [s for c in e.children for s in atoms_of(c)]
    if isinstance(e, WrOmega):
        return atoms_of(e.child)
    return []


def validate(e: GroupExpr) -> GroupExpr:
    for spec in atoms_of(e):
        require_valid(spec)
    return e


# -- JSON ---------------------------------------------------------------------

def to_json(e: GroupExpr) -> dict:
    if isinstance(e, Finite):
        return {"finite": e.group.to_json()}
    if isinstance(e, Atom):
        return {"atom": e.spec.to_json()}
    if isinstance(e, Prod):
        return {"prod": [to_json(c) for c in e.children]}
    return {"wr_omega": to_json(e.child)}


def from_json(data: dict | str) -> GroupExpr:
    if isinstance(data, str):
        data = json.loads(data)
    if "finite" in data:
        return Finite(FiniteGroup.from_json(data["finite"]))
    if "atom" in data:
        return Atom(FiberCoverSpec.from_json(data["atom"]))
    if "prod" in data:
        return Prod(tuple(from_json(c) for c in data["prod"]))
    if "wr_omega" in data:
        return WrOmega(from_json(data["wr_omega"]))
    raise ValueError(f"unrecognised expression JSON: {sorted(data)}")


# -- exact profile --------------------------------------------------------------

class _SeriesCache:
    """Per-node memo; racing writers compute equal values, first one wins."""

    def __init__(self):
        self._data: dict = {}
        self._lock = threading.Lock()

    def get(self, key):
        return self._data.get(key)

    def put(self, key, value):
        with self._lock:
            return self._data.setdefault(key, value)

    def clear(self):
        with self._lock:
            self._data.clear()


_CACHE = _SeriesCache()


def clear_cache() -> None:
    _CACHE.clear()


def finite_series(G: FiniteGroup, N: int) -> OrbitSeries:
    return OrbitSeries(tuple(subset_orbit_count(G, n) if n <= G.degree else 0
                             for n in range(N + 1)))


def profile(e: GroupExpr, N: int = DEFAULT_ORDER) -> OrbitSeries:
    """Exact u_0..u_N of the expression."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    key = (e.key(), N)
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    if isinstance(e, Finite):
        out = finite_series(e.group, N)
    elif isinstance(e, Atom):
        out = atom_series(e.spec, N)
    elif isinstance(e, Prod):
        out = profile(e.children[0], N)
        for c in e.children[1:]:
            out = convolve(out, profile(c, N))
    elif isinstance(e, WrOmega):
        out = euler_transform(profile(e.child, N))
    else:
        raise TypeError(f"not a group expression: {e!r}")
    return _CACHE.put(key, out)


# -- finite truncation and the oracle ------------------------------------------

@dataclass(frozen=True)
class TruncationResult:
    group: FiniteGroup
    t: int
    faithful_to: int


def _truncate_group(e: GroupExpr, t: int) -> FiniteGroup:
    if isinstance(e, Finite):
        return e.group
    if isinstance(e, Atom):
        raise NotTruncatable("cover atoms have no faithful finite realisation")
    if isinstance(e, Prod):
        return direct_product(*(_truncate_group(c, t) for c in e.children))
    return wreath(_truncate_group(e.child, t), symmetric_group(t))


def truncate(e: GroupExpr, t: int) -> TruncationResult:
    """Replace every copy of omega by t points."""
    if t < 1:
        raise ValueError("t must be positive")
    return TruncationResult(_truncate_group(e, t), t, t)


def _multiset_count(a: OrbitSeries, n: int) -> int:
    """Multisets of (size, label) pairs with label < a[size] and total size n, choosing
    the multiplicity of each kind in turn."""
    ways = [1] + [0] * n
    for size in range(1, n + 1):
        for _ in range(a[size]):
            ways = [sum(ways[r - j * size] for j in range(r // size + 1)) for r in range(n + 1)]
    return ways[n]


def _pair_count(a: OrbitSeries, b: OrbitSeries, n: int) -> int:
    total = 0
    for i in range(n + 1):
        for _ in range(a[i]):
            total += b[n - i]
    return total


def _truncation_oracle(e: GroupExpr, N: int, budget: int) -> OrbitSeries:
    t = max(N, 1)
    G = truncate(e, t).group
    counts = []
    for n in range(N + 1):
        if math.comb(G.degree, n) > budget:
            raise LimitExceeded(f"{math.comb(G.degree, n)} subsets of a degree-{G.degree} truncation")
        counts.append(subset_orbit_count(G, n))
    return OrbitSeries(tuple(counts))


def oracle_profile(e: GroupExpr, N: int, budget: int = DEFAULT_SUBSET_BUDGET,
                   bfs_cap: int = DEFAULT_BFS_CAP) -> OrbitSeries:
    """Independent brute-force route to profile(e, N)."""
    if not atoms_of(e):
        return _truncation_oracle(e, N, budget)
    if isinstance(e, Atom):
        return OrbitSeries(tuple(subset_orbit_series(e.spec, N, bfs_cap=bfs_cap)))
    if isinstance(e, Prod):
        out = oracle_profile(e.children[0], N, budget, bfs_cap)
        for c in e.children[1:]:
            nxt = oracle_profile(c, N, budget, bfs_cap)
            out = OrbitSeries(tuple(_pair_count(out, nxt, n) for n in range(N + 1)))
        return out
    child = oracle_profile(e.child, N, budget, bfs_cap)
    return OrbitSeries(tuple(_multiset_count(child, n) for n in range(N + 1)))


# -- structure ---------------------------------------------------------------

@dataclass(frozen=True)
class StructureStats:
    max_fiber_d: int
    has_non_hst_atom: bool
    all_fibers_one: bool
    skeleton_rank: int


def _wr_depth(e: GroupExpr) -> int:
    if isinstance(e, WrOmega):
        return 1 + _wr_depth(e.child)
    if isinstance(e, Prod):
        return max(_wr_depth(c) for c in e.children)
    return 0


def atom_under_wreath(e: GroupExpr, below: bool = False) -> bool:
    if isinstance(e, Atom):
        return below
    if isinstance(e, Prod):
        return any(atom_under_wreath(c, below) for c in e.children)
    if isinstance(e, WrOmega):
        return atom_under_wreath(e.child, True)
    return False


def structure_stats(e: GroupExpr) -> StructureStats:
    specs = [require_valid(s) for s in atoms_of(e)]
    hst = [is_highly_set_transitive(s.H) for s in specs]
    d = max((s.fiber for s, ok in zip(specs, hst) if ok), default=0)
    return StructureStats(d, not all(hst), all(s.fiber == 1 for s in specs), _wr_depth(e))
