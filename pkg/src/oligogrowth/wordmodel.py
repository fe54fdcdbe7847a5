"""Words over the fiber as exact models of finite configurations in F x Q.

A configuration with support q_1 < ... < q_m is recorded letter by letter: the
j-th letter lists what sits in the fiber above q_j. Because every base is
highly set-transitive, two configurations lie in the same orbit exactly when
their words are related by the moves of the atom:

* per-letter H on a single letter, global L on all letters,
* flip: reverse the word and apply tau to every letter,
* turn: move the last letter to the front and apply sigma to it,
* shuffle: any reordering of letters (symmetric base only).

Internally a letter is a tuple indexed by fiber points holding a positive mark
where the point is used (1 for subsets, label + 1 for tuples) and 0 elsewhere.
Per-letter H moves form a normal subgroup of the move group, so orbit searches
run on words whose letters are already reduced to their H-class minimum.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import LimitExceeded
from .permgrp import FiniteGroup, Permutation, restricted_growth_strings
from .qatoms import FiberCoverSpec, QReduct, require_valid

DEFAULT_BFS_CAP = 10**7
DEFAULT_SUBSET_BUDGET = 12
DEFAULT_TUPLE_BUDGET = 8


@dataclass(frozen=True)
class Word:
    letters: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        letters = tuple(tuple(sorted(set(int(p) for p in l))) for l in self.letters)
        if any(not l for l in letters):
            raise ValueError("letters must be nonempty")
        object.__setattr__(self, "letters", letters)

    @property
    def total_size(self) -> int:
        return sum(len(l) for l in self.letters)

    def to_json(self) -> str:
        return json.dumps([list(l) for l in self.letters], separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> Word:
        return cls(tuple(tuple(l) for l in json.loads(text)))

    def __str__(self) -> str:
        return self.to_json()


@dataclass(frozen=True)
class LabeledWord:
    """Letters as sorted (point, label) pairs; labels are tuple positions 0..n-1."""

    letters: tuple[tuple[tuple[int, int], ...], ...]

    def __post_init__(self):
        letters = tuple(tuple(sorted((int(p), int(a)) for p, a in l)) for l in self.letters)
        if any(not l for l in letters):
            raise ValueError("letters must be nonempty")
        labels = sorted(a for l in letters for _, a in l)
        if labels != list(range(len(labels))):
            raise ValueError("labels must be 0..n-1, each used once")
        for l in letters:
            pts = [p for p, _ in l]
            if len(set(pts)) != len(pts):
                raise ValueError("a point carries at most one label")
        object.__setattr__(self, "letters", letters)

    @property
    def total_size(self) -> int:
        return sum(len(l) for l in self.letters)

    @classmethod
    def from_tuple(cls, points: Sequence[tuple[int, int]]) -> LabeledWord:
        """Build from an injective tuple of (fiber point, rank in Q) pairs."""
        ranks = sorted({q for _, q in points})
        pos = {q: i for i, q in enumerate(ranks)}
        letters: list[list] = [[] for _ in ranks]
        for label, (f, q) in enumerate(points):
            letters[pos[q]].append((f, label))
        return cls(tuple(tuple(l) for l in letters))


# -- internal letter helpers ---------------------------------------------------

def _apply(g: tuple, letter: tuple) -> tuple:
    out = [0] * len(letter)
    for p, mark in enumerate(letter):
        out[g[p]] = mark
    return tuple(out)


def _letter_key(letter: tuple) -> tuple:
    return tuple((p, mark) for p, mark in enumerate(letter) if mark)


def _word_key(word: tuple) -> tuple:
    return tuple(_letter_key(l) for l in word)


@dataclass(frozen=True)
class MoveSet:
    per_letter_H: tuple[Permutation, ...]
    global_L: tuple[Permutation, ...]
    flip: Permutation | None
    turn: Permutation | None
    shuffle: bool


def move_set(spec: FiberCoverSpec) -> MoveSet:
    return MoveSet(spec.H.generators, spec.L.generators, spec.flip, spec.turn,
                   spec.base is QReduct.EQ)


def apply_raw_move(spec: FiberCoverSpec, word: tuple, move: tuple) -> tuple:
    """One generator move on an internal word, without any H-reduction.

    ``move`` is ("H", position, perm), ("L", perm), ("flip",), ("turn",) or ("swap", position).
    """
    kind = move[0]
    if kind == "H":
        _, j, h = move
        return word[:j] + (_apply(h.images, word[j]),) + word[j + 1:]
    if kind == "L":
        g = move[1].images
        return tuple(_apply(g, l) for l in word)
    if kind == "flip":
        t = spec.flip.images
        return tuple(_apply(t, l) for l in reversed(word))
    if kind == "turn":
        s = spec.turn.images
        return (_apply(s, word[-1]),) + word[:-1]
    if kind == "swap":
        j = move[1]
        return word[:j] + (word[j + 1], word[j]) + word[j + 2:]
    raise ValueError(f"unknown move {move!r}")


def raw_moves(spec: FiberCoverSpec, m: int) -> list[tuple]:
    ms = move_set(spec)
    moves: list[tuple] = [("H", j, h) for j in range(m) for h in ms.per_letter_H]
    moves += [("L", g) for g in ms.global_L]
    if ms.flip is not None:
        moves.append(("flip",))
    if ms.turn is not None and m > 0:
        moves.append(("turn",))
    if ms.shuffle:
        moves += [("swap", j) for j in range(m - 1)]
    return moves


class _Engine:
    """Orbit search on H-reduced words for one spec."""

    def __init__(self, spec: FiberCoverSpec, bfs_cap: int = DEFAULT_BFS_CAP):
        require_valid(spec)
        self.spec = spec
        self.F = spec.fiber
        self.H = spec.H.raw_elements
        self.L = [g.images for g in spec.L.generators]
        self.tau = spec.flip.images if spec.flip is not None else None
        self.sigma = spec.turn.images if spec.turn is not None else None
        self.shuffle = spec.base is QReduct.EQ
        self.bfs_cap = bfs_cap
        self._canon: dict[tuple, tuple] = {}

    def canon_letter(self, letter: tuple) -> tuple:
        c = self._canon.get(letter)
        if c is None:
            c = min((_apply(h, letter) for h in self.H), key=_letter_key)
            self._canon[letter] = c
        return c

    def reduce(self, word: Iterable[tuple]) -> tuple:
        w = tuple(self.canon_letter(l) for l in word)
        if self.shuffle:
            w = tuple(sorted(w, key=_letter_key))
        return w

    def neighbours(self, w: tuple) -> Iterator[tuple]:
        for g in self.L:
            yield self.reduce(_apply(g, l) for l in w)
        if self.tau is not None:
            yield self.reduce(_apply(self.tau, l) for l in reversed(w))
        if self.sigma is not None and w:
            yield self.reduce((_apply(self.sigma, w[-1]),) + w[:-1])

    def orbit(self, w: tuple) -> set:
        start = self.reduce(w)
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in self.neighbours(x):
                if y not in seen:
                    seen.add(y)
                    if len(seen) > self.bfs_cap:
                        raise LimitExceeded(f"orbit exceeds {self.bfs_cap} states")
                    stack.append(y)
        return seen

    def canonical(self, w: tuple) -> tuple:
        return min(self.orbit(w), key=_word_key)

    def count_orbits(self, words: Iterable[tuple]) -> int:
        seen: set = set()
        count = 0
        for w in words:
            w = self.reduce(w)
            if w in seen:
                continue
            count += 1
            seen |= self.orbit(w)
        return count

    # enumeration of reduced words

    @cached_property
    def subset_letters(self) -> dict[int, list[tuple]]:
        """H-reduced letters by size."""
        out: dict[int, list[tuple]] = {}
        for k in range(1, self.F + 1):
            reps = set()
            for pts in itertools.combinations(range(self.F), k):
                letter = tuple(1 if p in pts else 0 for p in range(self.F))
                reps.add(self.canon_letter(letter))
            out[k] = sorted(reps, key=_letter_key)
        return out

    def subset_words(self, n: int) -> Iterator[tuple]:
        for comp in compositions(n, self.F):
            choices = [self.subset_letters[s] for s in comp]
            if self.shuffle:
                # reordering is free, so only nondecreasing sequences are needed
                yield from _sorted_products(choices)
            else:
                yield from itertools.product(*choices)

    def labeled_letters(self, labels: tuple[int, ...]) -> list[tuple]:
        reps = set()
        for pts in itertools.permutations(range(self.F), len(labels)):
            letter = [0] * self.F
            for p, a in zip(pts, labels):
                letter[p] = a + 1
            reps.add(self.canon_letter(tuple(letter)))
        return sorted(reps, key=_letter_key)

    def labeled_words(self, n: int) -> Iterator[tuple]:
        for comp in compositions(n, self.F):
            for blocks in _ordered_blocks(tuple(range(n)), comp):
                yield from itertools.product(*(self.labeled_letters(b) for b in blocks))


def _sorted_products(choices: list[list[tuple]]) -> Iterator[tuple]:
    """Products whose keys are nondecreasing among equal-size neighbours."""
    for combo in itertools.product(*choices):
        if all(len(_letter_key(combo[i])) != len(_letter_key(combo[i + 1]))
               or _letter_key(combo[i]) <= _letter_key(combo[i + 1])
               for i in range(len(combo) - 1)):
            yield combo


def _ordered_blocks(labels: tuple[int, ...], sizes: tuple[int, ...]) -> Iterator[tuple]:
    if not sizes:
        yield ()
        return
    first, rest = sizes[0], sizes[1:]
    for chosen in itertools.combinations(labels, first):
        remaining = tuple(a for a in labels if a not in chosen)
        for tail in _ordered_blocks(remaining, rest):
            yield (chosen,) + tail


def compositions(n: int, max_part: int) -> Iterator[tuple[int, ...]]:
    """Ordered compositions of n with parts in 1..max_part."""
    if n == 0:
        yield ()
        return
    for first in range(1, min(n, max_part) + 1):
        for tail in compositions(n - first, max_part):
            yield (first,) + tail


# -- conversions between public and internal words -------------------------------

def _word_to_internal(w: Word, F: int) -> tuple:
    for l in w.letters:
        if max(l) >= F:
            raise ValueError(f"letter {l} outside fiber of size {F}")
    return tuple(tuple(1 if p in l else 0 for p in range(F)) for l in w.letters)


def _labeled_to_internal(w: LabeledWord, F: int) -> tuple:
    out = []
    for l in w.letters:
        letter = [0] * F
        for p, a in l:
            if p >= F:
                raise ValueError(f"point {p} outside fiber of size {F}")
            letter[p] = a + 1
        out.append(tuple(letter))
    return tuple(out)


def _internal_to_word(w: tuple) -> Word:
    return Word(tuple(tuple(p for p, m in enumerate(l) if m) for l in w))


def _internal_to_labeled(w: tuple) -> LabeledWord:
    return LabeledWord(tuple(tuple((p, m - 1) for p, m in enumerate(l) if m) for l in w))


# -- public operations -------------------------------------------------------------

def canonical_form(w: Word | LabeledWord, spec: FiberCoverSpec,
                   bfs_cap: int = DEFAULT_BFS_CAP) -> Word | LabeledWord:
    """Least word, letters compared as sorted point lists, in the orbit of ``w``."""
    eng = _Engine(spec, bfs_cap)
    if isinstance(w, LabeledWord):
        return _internal_to_labeled(eng.canonical(_labeled_to_internal(w, spec.fiber)))
    return _internal_to_word(eng.canonical(_word_to_internal(w, spec.fiber)))


def same_orbit(a: Word | LabeledWord, b: Word | LabeledWord, spec: FiberCoverSpec) -> bool:
    return canonical_form(a, spec) == canonical_form(b, spec)


def count_subset_orbits(spec: FiberCoverSpec, n: int, budget: int | None = DEFAULT_SUBSET_BUDGET,
                        bfs_cap: int = DEFAULT_BFS_CAP) -> int:
    """u_n by enumerating words of total size n up to the moves."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if budget is not None and n > budget:
        raise LimitExceeded(f"n={n} exceeds the word-model budget {budget}")
    if n == 0:
        return 1
    eng = _Engine(spec, bfs_cap)
    return eng.count_orbits(eng.subset_words(n))


def subset_orbit_series(spec: FiberCoverSpec, N: int, **kw) -> list[int]:
    return [count_subset_orbits(spec, n, **kw) for n in range(N + 1)]


def count_tuple_orbits(spec: FiberCoverSpec, n: int, injective: bool = True,
                       budget: int | None = DEFAULT_TUPLE_BUDGET,
                       bfs_cap: int = DEFAULT_BFS_CAP) -> int:
    """l_n (injective tuples) or o_n (all tuples, via equality pattern and injective core)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if budget is not None and n > budget:
        raise LimitExceeded(f"n={n} exceeds the tuple budget {budget}")
    if n == 0:
        return 1
    eng = _Engine(spec, bfs_cap)
    if injective:
        return eng.count_orbits(eng.labeled_words(n))
    cores: dict[int, int] = {}
    total = 0
    for rgs in restricted_growth_strings(n):
        k = max(rgs) + 1
        if k not in cores:
            cores[k] = eng.count_orbits(eng.labeled_words(k))
        total += cores[k]
    return total


def _all_tuple_words(F: int, n: int) -> Iterator[tuple]:
    """Words for every n-tuple: coordinate i picks a letter and a point, and each
    point records the set of coordinates on it as a bitmask (stored plus one)."""
    for r in range(1, n + 1):
        for rows in itertools.product(range(r), repeat=n):
            if len(set(rows)) != r:
                continue
            for pts in itertools.product(range(F), repeat=n):
                letters = [[0] * F for _ in range(r)]
                for i, (row, p) in enumerate(zip(rows, pts)):
                    letters[row][p] |= 1 << i
                yield tuple(tuple(m + 1 if m else 0 for m in l) for l in letters)


def count_all_tuple_orbits(spec: FiberCoverSpec, n: int, budget: int | None = 6,
                           bfs_cap: int = DEFAULT_BFS_CAP) -> int:
    """o_n by enumerating every n-tuple directly, repeated points included."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if budget is not None and n > budget:
        raise LimitExceeded(f"n={n} exceeds the direct tuple budget {budget}")
    if n == 0:
        return 1
    eng = _Engine(spec, bfs_cap)
    return eng.count_orbits(_all_tuple_words(spec.fiber, n))


# -- sensitivity ---------------------------------------------------------------------

@dataclass(frozen=True)
class AtomSensitivity:
    holds: bool
    checked_to: int
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds


def _core_word(slots: Sequence[tuple[int, int]], F: int) -> tuple:
    """Internal labeled word of an injective list of (letter index, point) slots."""
    rows = sorted({r for r, _ in slots})
    pos = {r: i for i, r in enumerate(rows)}
    letters = [[0] * F for _ in rows]
    for label, (r, p) in enumerate(slots):
        letters[pos[r]][p] = label + 1
    return tuple(tuple(l) for l in letters)


def _tuple_key(eng: _Engine, slots: Sequence[tuple[int, int]], cache: dict) -> tuple:
    """Orbit key of a general tuple of slots: equality pattern plus canonical core."""
    first: dict = {}
    pattern = []
    core = []
    for s in slots:
        if s not in first:
            first[s] = len(first)
            core.append(s)
        pattern.append(first[s])
    w = eng.reduce(_core_word(core, eng.F))
    c = cache.get(w)
    if c is None:
        orb = eng.orbit(w)
        c = min(orb, key=_word_key)
        for x in orb:
            cache[x] = c
    return tuple(pattern), c


def atom_sensitivity(spec: FiberCoverSpec, m: int, n_max: int,
                     bfs_cap: int = DEFAULT_BFS_CAP) -> AtomSensitivity:
    """Check that projections to m coordinates separate tuple orbits up to length n_max.

    For n <= m some projection is onto, which always separates; for larger n
    only increasing m-subsets of coordinates need to be tried.
    """
    if m < 1:
        raise ValueError("m must be positive")
    eng = _Engine(spec, bfs_cap)
    cache: dict = {}
    for n in range(m + 1, n_max + 1):
        owner: dict[tuple, tuple] = {}
        projections = list(itertools.combinations(range(n), m))
        for k in range(1, n + 1):
            seen_cores: set = set()
            cores = []
            for w in eng.labeled_words(k):
                w = eng.reduce(w)
                if w in seen_cores:
                    continue
                orb = eng.orbit(w)
                seen_cores |= orb
                cores.append(w)
            for rgs in restricted_growth_strings(n):
                if max(rgs) + 1 != k:
                    continue
                for core in cores:
                    slot_of = {}
                    for r, letter in enumerate(core):
                        for p, mark in enumerate(letter):
                            if mark:
                                slot_of[mark - 1] = (r, p)
                    slots = [slot_of[b] for b in rgs]
                    full = _tuple_key(eng, slots, cache)
                    sig = tuple(_tuple_key(eng, [slots[i] for i in P], cache) for P in projections)
                    prev = owner.get(sig)
                    if prev is None:
                        owner[sig] = (full, slots)
                    elif prev[0] != full:
                        return AtomSensitivity(False, n, (prev[1], slots))
    return AtomSensitivity(True, n_max)


# -- finite action on words of fixed length --------------------------------------------

def all_words(F: int, m: int, letter_sizes: Iterable[int] | None = None) -> list[tuple]:
    sizes = set(letter_sizes) if letter_sizes is not None else set(range(1, F + 1))
    letters = [tuple(1 if p in pts else 0 for p in range(F))
               for k in sorted(sizes) for pts in itertools.combinations(range(F), k)]
    return sorted(itertools.product(letters, repeat=m), key=_word_key)


def word_action(spec: FiberCoverSpec, m: int, letter_sizes: Iterable[int] | None = None,
                order_limit: int = 10**6) -> tuple[list[Word], FiniteGroup]:
    """The words of length m and the permutation group the moves induce on them.

    Restricting to letters of given sizes keeps an invariant subset, so the
    result is a homomorphic image of the full action.
    """
    require_valid(spec)
    words = all_words(spec.fiber, m, letter_sizes)
    index = {w: i for i, w in enumerate(words)}
    gens = []
    seen = set()
    for mv in raw_moves(spec, m):
        img = tuple(index[apply_raw_move(spec, w, mv)] for w in words)
        if img not in seen:
            seen.add(img)
            gens.append(Permutation(img))
    group = FiniteGroup(len(words), tuple(gens), order_limit)
    return [_internal_to_word(w) for w in words], group


def word_action_group(spec: FiberCoverSpec, m: int, letter_sizes: Iterable[int] | None = None,
                      order_limit: int = 10**6) -> FiniteGroup:
    return word_action(spec, m, letter_sizes, order_limit)[1]


@lru_cache(maxsize=1024)
def _sympy_word_group(spec: FiberCoverSpec, m: int, letter_sizes: tuple[int, ...] | None):
    from sympy.combinatorics import Permutation as SPerm
    from sympy.combinatorics import PermutationGroup

    _, group = word_action(spec, m, letter_sizes)
    deg = group.degree
    gens = [SPerm(list(g.images)) for g in group.generators] or [SPerm(list(range(deg)))]
    G = PermutationGroup(gens)
    G.schreier_sims()
    return G


def word_groups_normal(specN: FiberCoverSpec, specG: FiberCoverSpec, m: int,
                       letter_sizes: Iterable[int] | None = None) -> bool:
    """Whether N's word group is a normal subgroup of G's on the same words.

    Membership in these groups is decided with sympy's Schreier-Sims, since the
    groups are far too large to list.
    """
    sizes = tuple(sorted(set(letter_sizes))) if letter_sizes is not None else None
    N = _sympy_word_group(specN, m, sizes)
    G = _sympy_word_group(specG, m, sizes)
    if not all(G.contains(g) for g in N.generators):
        return False
    for g in G.generators:
        ginv = ~g
        for h in N.generators:
            if not N.contains(ginv * h * g):
                return False
    return True


# -- normality witnesses -------------------------------------------------------------

@dataclass(frozen=True)
class NormalityWitness:
    """Evidence that N is not a normal subgroup of G.

    kind "containment": ``first`` and ``second`` are N-equivalent tuples that
    are not G-equivalent. kind "move": ``first`` and ``second`` are
    N-equivalent tuples on one window of base points that the G-move in
    ``selection`` = (move, window size) sends to different N-orbits.
    """

    kind: str
    first: LabeledWord
    second: LabeledWord
    selection: tuple = ()

    def to_json(self) -> dict:
        def letters(w: LabeledWord) -> list:
            return [[list(pair) for pair in l] for l in w.letters]
        return {"kind": self.kind, "first": letters(self.first), "second": letters(self.second),
                "selection": [list(c) for c in self.selection]}


class _LooseOrbits:
    """Orbits of one spec on labeled words, reduced only by a subgroup K of H per letter
    and with letters kept in place, so that finer invariants can be read off."""

    def __init__(self, spec: FiberCoverSpec, K: Iterable[tuple], bfs_cap: int):
        self.K = list(K)
        self.H = [g.images for g in spec.H.generators]
        self.L = [g.images for g in spec.L.generators]
        self.tau = spec.flip.images if spec.flip is not None else None
        self.sigma = spec.turn.images if spec.turn is not None else None
        self.shuffle = spec.base is QReduct.EQ
        self.bfs_cap = bfs_cap
        self._canon: dict[tuple, tuple] = {}

    def reduce(self, w: Iterable[tuple]) -> tuple:
        out = []
        for letter in w:
            c = self._canon.get(letter)
            if c is None:
                c = min((_apply(k, letter) for k in self.K), key=_letter_key)
                self._canon[letter] = c
            out.append(c)
        return tuple(out)

    def neighbours(self, w: tuple) -> Iterator[tuple]:
        for j in range(len(w)):
            for h in self.H:
                yield self.reduce(w[:j] + (_apply(h, w[j]),) + w[j + 1:])
        for g in self.L:
            yield self.reduce(_apply(g, l) for l in w)
        if self.tau is not None:
            yield self.reduce(_apply(self.tau, l) for l in reversed(w))
        if self.sigma is not None and w:
            yield self.reduce((_apply(self.sigma, w[-1]),) + w[:-1])
        if self.shuffle:
            for j in range(len(w) - 1):
                yield w[:j] + (w[j + 1], w[j]) + w[j + 2:]

    def orbit(self, w: tuple) -> list[tuple]:
        start = self.reduce(w)
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in self.neighbours(x):
                if y not in seen:
                    seen.add(y)
                    if len(seen) > self.bfs_cap:
                        raise LimitExceeded(f"orbit exceeds {self.bfs_cap} states")
                    stack.append(y)
        return sorted(seen, key=_word_key)


class _KeyCache:
    def __init__(self, eng: _Engine):
        self.eng = eng
        self.memo: dict[tuple, tuple] = {}

    def __call__(self, w: tuple) -> tuple:
        w = self.eng.reduce(w)
        c = self.memo.get(w)
        if c is None:
            orb = self.eng.orbit(w)
            c = min(orb, key=_word_key)
            for x in orb:
                self.memo[x] = c
        return c


def _short_words(eng: _Engine, n: int, max_length: int) -> Iterator[tuple]:
    for w in eng.labeled_words(n):
        if len(w) <= max_length:
            yield w


def containment_witness(specN: FiberCoverSpec, specG: FiberCoverSpec, n: int, max_length: int,
                        bfs_cap: int = DEFAULT_BFS_CAP) -> NormalityWitness | None:
    """Two n-tuples on at most ``max_length`` fibers in one N-orbit but different G-orbits."""
    common = specN.H.element_set & specG.H.element_set
    loose = _LooseOrbits(specN, common, bfs_cap)
    key_g = _KeyCache(_Engine(specG, bfs_cap))
    seen: set = set()
    for w in _short_words(_Engine(specN, bfs_cap), n, max_length):
        w = loose.reduce(w)
        if w in seen:
            continue
        orbit = loose.orbit(w)
        seen.update(orbit)
        k0 = key_g(orbit[0])
        for z in orbit[1:]:
            if key_g(z) != k0:
                return NormalityWitness("containment", _internal_to_labeled(orbit[0]),
                                        _internal_to_labeled(z))
    return None


def _window_moves(spec: FiberCoverSpec, p: int) -> list[tuple]:
    """Generator moves of the spec's group on words over a window of p base points."""
    moves: list[tuple] = [("H", j, h) for j in range(p) for h in spec.H.generators]
    moves += [("L", g) for g in spec.L.generators]
    if spec.flip is not None:
        moves.append(("flip",))
    if spec.turn is not None:
        moves.append(("turn",))
    if spec.base is QReduct.EQ:
        moves += [("swap", j) for j in range(p - 1)]
    return moves


def _strip(word: tuple) -> tuple:
    return tuple(l for l in word if any(l))


@lru_cache(maxsize=256)
def _window_classes(specN: FiberCoverSpec, n: int, p: int, bfs_cap: int) -> tuple:
    """Tuples of n points placed on a window of p base points, grouped by N-orbit."""
    eng = _Engine(specN, bfs_cap)
    key = _KeyCache(eng)
    empty = (0,) * specN.fiber
    classes: dict[tuple, list[tuple]] = {}
    for w in eng.labeled_words(n):
        if len(w) > p:
            continue
        k = key(w)
        for slots in itertools.combinations(range(p), len(w)):
            z = [empty] * p
            for letter, j in zip(w, slots):
                z[j] = letter
            classes.setdefault(k, []).append(tuple(z))
    return tuple(tuple(c) for _, c in sorted(classes.items(), key=lambda kv: _word_key(kv[0])))


@lru_cache(maxsize=64)
def _key_cache(spec: FiberCoverSpec, bfs_cap: int) -> _KeyCache:
    return _KeyCache(_Engine(spec, bfs_cap))


def _slots(z: tuple) -> tuple[int, ...]:
    return tuple(j for j, letter in enumerate(z) if any(letter))


def move_witness(specN: FiberCoverSpec, specG: FiberCoverSpec, n: int, p: int,
                 bfs_cap: int = DEFAULT_BFS_CAP) -> NormalityWitness | None:
    """A generator of G splitting an N-orbit of n-tuples on a window of p base points.

    Each move is one element of G acting on all tuples supported on the
    window, so if N is normal in G it must send N-equivalent tuples to
    N-equivalent tuples.
    """
    if specN.fiber != specG.fiber:
        raise ValueError("specs must share the fiber size")
    key = _key_cache(specN, bfs_cap)
    moves = _window_moves(specG, p)
    for cls in _window_classes(specN, n, p, bfs_cap):
        if len(cls) < 2:
            continue
        for mv in moves:
            first = None
            for z in cls:
                k = key(_strip(apply_raw_move(specG, z, mv)))
                if first is None:
                    first = (k, z)
                elif k != first[0]:
                    return NormalityWitness("move", _internal_to_labeled(_strip(first[1])),
                                            _internal_to_labeled(_strip(z)),
                                            (repr(mv), p, _slots(first[1]), _slots(z)))
    return None


def normality_witness(specN: FiberCoverSpec, specG: FiberCoverSpec, max_points: int = 6,
                      max_length: int = 4, bfs_cap: int = DEFAULT_BFS_CAP) -> NormalityWitness | None:
    """First witness found against N being normal in G, or None.

    Fixing the parity of an alternating fiber group at two base points takes
    three labels in each fiber, hence six points for fibers of size four.
    """
    for n in range(1, min(max_points, 4) + 1):
        w = containment_witness(specN, specG, n, max_length, bfs_cap)
        if w is not None:
            return w
    for n in range(1, max_points + 1):
        for p in range(1, max_length + 1):
            w = move_witness(specN, specG, n, p, bfs_cap)
            if w is not None:
                return w
    return None
