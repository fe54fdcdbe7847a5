"""The acceptance suite: twelve checks, each pairing a fast path with an
independent brute-force route or a reference constant.

Every check returns ``(passed, detail)``; :func:`run` adds timing and the
runtime budget. ``level="quick"`` shrinks the corpora for a fast smoke run,
``level="full"`` uses the documented scope.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from typing import Callable

from .atomseries import order_class_tables
from .classify import INTERMEDIATE, POLYNOMIAL, TOO_FAST, check_gap, classify_expr, f_poly, gamma
from .covers import (FiniteCover, analyze, build_lift, cover_isomorphism, decompose, split_cover)
from .expr import Atom, Finite, Prod, WrOmega, profile, triv
from .permgrp import (FiniteGroup, Permutation, all_subgroups_up_to_conjugacy, alternating_group,
                      cyclic_group, direct_product, fiber_partition, group_from_cycles,
                      is_highly_set_transitive, m_sensitivity, orbit_counts, stirling2,
                      subset_orbit_count, symmetric_group, trivial_group, wreath)
from .qatoms import (ALLOWED_QUOTIENTS, QReduct, classify_normal_pair, enumerate_S_catalog,
                     hst_catalog, hst_name, make_spec)
from .series import burnside_sequences, euler_transform, ones
from .wordmodel import (atom_sensitivity, count_all_tuple_orbits, count_tuple_orbits,
                        normality_witness, subset_orbit_series, word_groups_normal)

LEVELS = ("quick", "full")


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    budget: float

    @property
    def within_budget(self) -> bool:
        return self.seconds <= self.budget

    @property
    def ok(self) -> bool:
        return self.passed and self.within_budget

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        timing = f"{self.seconds:.1f}s of {self.budget:g}s"
        return f"[{status}] {self.number:2d}. {self.title} ({timing}): {self.detail}"


def fibonacci_atom():
    return make_spec(2, symmetric_group(2), base=QReduct.ORDER)


def partition_numbers(N: int) -> list[int]:
    """p(0..N) by the standard part-size dynamic programme."""
    p = [1] + [0] * N
    for part in range(1, N + 1):
        for n in range(part, N + 1):
            p[n] += p[n - part]
    return p


# -- 1 ---------------------------------------------------------------------------

def check_fibonacci(level: str = "full") -> tuple[bool, str]:
    spec = fibonacci_atom()
    fib = [1, 1]
    while len(fib) < 31:
        fib.append(fib[-1] + fib[-2])
    fast = list(profile(Atom(spec), 30).coefficients)
    n_word = 10 if level == "full" else 8
    word = subset_orbit_series(spec, n_word)
    ok_fast = fast == fib
    ok_word = word == fast[:n_word + 1]
    return ok_fast and ok_word, (f"u_0..u_30 Fibonacci: {ok_fast} (u_30 = {fast[30]}); "
                                 f"word model to n={n_word}: {ok_word}")


# -- 2 ---------------------------------------------------------------------------

REFERENCE_GAMMA = (1.0, 1.618, 1.839, 1.928, 1.966)


def check_gamma_table(level: str = "full") -> tuple[bool, str]:
    values = [gamma(d) for d in range(1, 31)]
    table_ok = all(abs(values[d - 1].value - ref) < 1e-3 for d, ref in enumerate(REFERENCE_GAMMA, 1))
    increasing = all(a.value < b.value for a, b in zip(values, values[1:]))
    limit_ok = values[29].value > 1.9999
    bracket_ok = all(f_poly(v.d, v.lo) < 0 < f_poly(v.d, v.hi) for v in values[1:])
    shown = ", ".join(f"{v.value:.4f}" for v in values[:5])
    return (table_ok and increasing and limit_ok and bracket_ok,
            f"gamma_1..5 = {shown}; increasing to d=30: {increasing}; "
            f"gamma_30 = {values[29].value:.8f}; exact sign brackets: {bracket_ok}")


# -- 3 ---------------------------------------------------------------------------

def check_gap_rates(level: str = "full") -> tuple[bool, str]:
    parts = []
    ok = True
    for d in (2, 3, 4):
        report = check_gap(Atom(make_spec(d, symmetric_group(d))), N=60, tol=1e-6)
        series = profile(Atom(make_spec(d, symmetric_group(d))), 60)
        rate = series[60] / series[59]
        dev = abs(rate - gamma(d).value)
        ok &= dev < 1e-6 and report.passed
        parts.append(f"d={d}: u60/u59 - gamma = {dev:.1e}")
    return ok, "; ".join(parts)


# -- 4 ---------------------------------------------------------------------------

def check_euler(level: str = "full") -> tuple[bool, str]:
    n_max = 5 if level == "full" else 4
    parts = []
    ok = True
    for name, G in (("S1", trivial_group(1)), ("S2", symmetric_group(2)), ("S3", symmetric_group(3))):
        fast = profile(WrOmega(Finite(G)), n_max)
        brute = [1] + [subset_orbit_count(wreath(G, symmetric_group(n)), n) for n in range(1, n_max + 1)]
        same = list(fast.coefficients) == brute
        ok &= same
        parts.append(f"{name}: {brute} {'=' if same else '!='} fast")
    p = partition_numbers(9)
    euler = list(euler_transform(ones(9)).coefficients)
    ok &= euler == p == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]
    parts.append(f"Euler(1,1,...) = {euler}")
    return ok, "; ".join(parts)


# -- 5 ---------------------------------------------------------------------------

def product_pairs() -> list[tuple[str, FiniteGroup, str, FiniteGroup]]:
    return [
        ("S2", symmetric_group(2), "S3", symmetric_group(3)),
        ("Z3", cyclic_group(3), "Z4", cyclic_group(4)),
        ("A4", alternating_group(4), "S1", trivial_group(1)),
        ("D4", group_from_cycles(4, "(0 1 2 3)", "(0 2)"), "Z2", cyclic_group(2)),
        ("Z5", cyclic_group(5), "S3", symmetric_group(3)),
        ("S2", symmetric_group(2), "S2", symmetric_group(2)),
        ("id3", trivial_group(3), "Z3", cyclic_group(3)),
    ]


def check_convolution(level: str = "full") -> tuple[bool, str]:
    pairs = product_pairs() if level == "full" else product_pairs()[:5]
    bad = []
    for n1, G1, n2, G2 in pairs:
        fast = profile(Prod((Finite(G1), Finite(G2))), 6)
        P = direct_product(G1, G2)
        brute = [subset_orbit_count(P, n) for n in range(7)]
        if list(fast.coefficients) != brute:
            bad.append(f"{n1}x{n2}")
    return not bad, f"{len(pairs)} pairs to n=6, mismatches: {bad or 'none'}"


# -- 6 ---------------------------------------------------------------------------

def _listed_hst_orders(n: int) -> list[int]:
    """Orders allowed by the reference list: S_n, A_n for n >= 3, AGL(1,5) at 5."""
    out = [math.factorial(n)]
    if n >= 3:
        out.append(math.factorial(n) // 2)
    if n == 5:
        out.append(20)
    return sorted(out)


def check_hst_catalog(level: str = "full") -> tuple[bool, str]:
    top = 12 if level == "full" else 9
    entries = [G for n in range(1, top + 1) for G in hst_catalog(n)]
    brute_ok = all(is_highly_set_transitive(G) for G in entries)
    orders = {(G.degree, G.order) for G in entries if G.degree in (5, 9)}
    named_ok = {(5, 20), (9, 504), (9, 1512)} <= orders
    complete_to = 6 if level == "full" else 5
    found, extra = {}, []
    for n in range(1, complete_to + 1):
        hits = [H for H in all_subgroups_up_to_conjugacy(symmetric_group(n))
                if is_highly_set_transitive(H)]
        found[n] = sorted(H.order for H in hits)
        extra += [f"{hst_name(H)} of order {H.order} on {n} points" for H in hits
                  if H.order not in _listed_hst_orders(n)]
    catalog_ok = all(found[n] == sorted(G.order for G in hst_catalog(n)) for n in found)
    detail = (f"{len(entries)} catalog groups of degree <= {top} pass: {brute_ok}; "
              f"orders 20/504/1512 present: {named_ok}; hst subgroup orders of S_n, "
              f"n <= {complete_to}: {found}; catalog matches the search: {catalog_ok}")
    if extra:
        detail += "; set-transitive groups outside the reference list: " + ", ".join(extra)
    return brute_ok and named_ok and catalog_ok and not extra, detail


# -- 7 ---------------------------------------------------------------------------

def _random_wreath_element(rng: random.Random, k: int, b: int) -> Permutation:
    top = list(range(b))
    rng.shuffle(top)
    imgs = [0] * (k * b)
    for a in range(b):
        local = list(range(k))
        rng.shuffle(local)
        for f in range(k):
            imgs[a * k + f] = top[a] * k + local[f]
    return Permutation(tuple(imgs))


def cover_corpus(count: int = 24, seed: int = 2024, max_order: int = 5000) -> list[FiniteCover]:
    """The nonsplit Z4 example, a few kernel-constructor covers, and seeded
    random subgroups of S_k wr S_b with k*b <= 12."""
    z4 = FiniteCover(group_from_cycles(4, "(0 2 1 3)"), symmetric_group(2), (0, 0, 1, 1))
    covers = [
        z4,
        split_cover(2, symmetric_group(2), symmetric_group(2), symmetric_group(3)),
        split_cover(2, trivial_group(2), symmetric_group(2), symmetric_group(3)),
        split_cover(3, alternating_group(3), symmetric_group(3), symmetric_group(2)),
        split_cover(3, symmetric_group(3), symmetric_group(3), cyclic_group(3)),
        split_cover(4, alternating_group(4), symmetric_group(4), cyclic_group(2)),
    ]
    rng = random.Random(seed)
    while len(covers) < count:
        k, b = rng.choice((2, 2, 3, 3, 4)), rng.choice((2, 3, 4))
        if k * b > 12:
            continue
        gens = tuple(_random_wreath_element(rng, k, b) for _ in range(rng.choice((1, 2))))
        G = FiniteGroup(k * b, gens, max_order)
        try:
            G.order
        except Exception:
            continue
        covers.append(FiniteCover.from_congruence(G, fiber_partition(k, b)))
    return covers


def lift_postconditions(lift: FiniteCover, data) -> bool:
    an = analyze(lift, max_search_order=0)
    at = data.at(lift.base)
    return all(an.fibers[a].fiber_group.same_elements(at[a].F)
               and an.fibers[a].pointwise_binding.same_elements(at[a].B)
               for a in range(lift.base.degree))


def check_cover_round_trip(level: str = "full") -> tuple[bool, str]:
    covers = cover_corpus(24 if level == "full" else 10)
    iso_bad, post_bad = [], []
    for i, c in enumerate(covers):
        Gt, data = decompose(c)
        lift = build_lift(Gt, data)
        if cover_isomorphism(c, lift) is None:
            iso_bad.append(i)
        if not lift_postconditions(lift, data):
            post_bad.append(i)
    return (not iso_bad and not post_bad,
            f"{len(covers)} covers (degrees {min(c.total.degree for c in covers)}.."
            f"{max(c.total.degree for c in covers)}, Z4 example first): "
            f"non-isomorphic lifts {iso_bad or 'none'}, failed lift postconditions {post_bad or 'none'}")


# -- 8 ---------------------------------------------------------------------------

WORD_LIMIT = 4000


def _letter_size_sets(F: int, m: int) -> list:
    """All letters when the word set is small, otherwise one letter size at a time
    (each choice is an invariant subset, so the groups are homomorphic images)."""
    if (2 ** F - 1) ** m <= WORD_LIMIT:
        return [None]
    return [(k,) for k in range(1, F + 1)]


def normal_pair_consistency(specN, specG, max_m: int = 4) -> tuple[bool, str]:
    report = classify_normal_pair(specN, specG)
    F = specN.fiber
    images_normal = all(word_groups_normal(specN, specG, m, sizes)
                        for m in range(1, max_m + 1) for sizes in _letter_size_sets(F, m))
    if report.is_normal:
        witness = normality_witness(specN, specG, max_points=max_m, max_length=max_m)
        if not images_normal or witness is not None:
            return False, "normal verdict contradicted by the word model"
        # the quotient list is only claimed when G's base is not the symmetric group
        if specG.base is not QReduct.EQ and report.quotient_iso_tag not in ALLOWED_QUOTIENTS:
            return False, f"quotient {report.quotient_iso_tag} outside the allowed list"
        return True, "normal"
    if report.is_normal is None:
        return False, "no verdict"
    if not images_normal:
        return True, "image witness"
    witness = normality_witness(specN, specG, max_length=max_m)
    if witness is None:
        return False, "non-normal verdict without a witness at m <= 4"
    return True, f"{witness.kind} witness"


def check_normal_pairs(level: str = "full") -> tuple[bool, str]:
    top = 4 if level == "full" else 3
    counts = {"normal": 0, "witnessed": 0}
    failures = []
    for k in range(1, top + 1):
        catalog = [e.spec for e in enumerate_S_catalog(k)]
        for a in catalog:
            for b in catalog:
                ok, why = normal_pair_consistency(a, b)
                if not ok:
                    failures.append(f"{a} in {b}: {why}")
                elif why == "normal":
                    counts["normal"] += 1
                else:
                    counts["witnessed"] += 1
    detail = (f"fibers 1..{top}: {counts['normal']} normal pairs confirmed, "
              f"{counts['witnessed']} non-normal pairs witnessed, {len(failures)} inconsistent")
    if failures:
        detail += "; first: " + failures[0]
    return not failures, detail


# -- 9 ---------------------------------------------------------------------------

def _identities_hold(u: list[int], ell: list[int], o: list[int]) -> bool:
    for n in range(len(u)):
        if not u[n] <= ell[n] <= math.factorial(n) * u[n]:
            return False
        expected = 1 if n == 0 else sum(stirling2(n, k) * ell[k] for k in range(1, n + 1))
        if o[n] != expected:
            return False
    return True


def check_ois_identities(level: str = "full") -> tuple[bool, str]:
    n_max = 6 if level == "full" else 5
    groups = [H for n in range(1, 6) for H in all_subgroups_up_to_conjugacy(symmetric_group(n))]
    bad_groups = 0
    for G in groups:
        counts = [orbit_counts(G, n) for n in range(n_max + 1)]
        if not _identities_hold([c.u for c in counts], [c.l for c in counts], [c.o for c in counts]):
            bad_groups += 1
    specs = [e.spec for k in (1, 2) for e in enumerate_S_catalog(k)]
    bad_atoms = 0
    for spec in specs:
        u = list(profile(Atom(spec), n_max).coefficients)
        ell = [count_tuple_orbits(spec, n) for n in range(n_max + 1)]
        o = [count_all_tuple_orbits(spec, n) for n in range(n_max + 1)]
        if not _identities_hold(u, ell, o):
            bad_atoms += 1
    return (bad_groups == 0 and bad_atoms == 0,
            f"{len(groups)} subgroups of S_n (n <= 5) and {len(specs)} atoms with |F| <= 2, "
            f"n <= {n_max}: failures {bad_groups} groups, {bad_atoms} atoms")


# -- 10 --------------------------------------------------------------------------

def check_trichotomy(level: str = "full") -> tuple[bool, str]:
    z4 = Atom(make_spec(4, cyclic_group(4)))
    c_z4 = classify_expr(z4)
    s = profile(z4, 30)
    z4_ok = c_z4.tag == TOO_FAST and s[30] / s[29] > 2
    q = Atom(make_spec(1, trivial_group(1)))
    poly_ok = True
    degrees = []
    for k in (1, 2, 3):
        e = q if k == 1 else Prod(tuple([q] * k))
        g = classify_expr(e)
        expected = [math.comb(n + k - 1, k - 1) for n in range(65)]
        poly_ok &= (g.tag == POLYNOMIAL and g.degree == k - 1
                    and list(profile(e, 64).coefficients) == expected)
        degrees.append(g.degree)
    ww = WrOmega(WrOmega(triv()))
    ww_ok = (classify_expr(ww).tag == INTERMEDIATE
             and list(profile(ww, 40).coefficients) == partition_numbers(40))
    return (z4_ok and poly_ok and ww_ok,
            f"Z4 atom {c_z4.tag} with u30/u29 = {s[30] / s[29]:.4f}; "
            f"products of 1..3 unit atoms Polynomial of degrees {degrees}: {poly_ok}; "
            f"double wreath Intermediate with partition numbers: {ww_ok}")


# -- 11 --------------------------------------------------------------------------

def sensitivity_pairs() -> list[tuple[str, FiniteGroup, FiniteGroup]]:
    """(name, H, G) with H a subgroup of G."""
    d4 = group_from_cycles(4, "(0 1 2 3)", "(0 2)")
    return [
        ("A3 < S3", alternating_group(3), symmetric_group(3)),
        ("1 < Z3", trivial_group(3), cyclic_group(3)),
        ("Z4 < D4", cyclic_group(4), d4),
        ("A4 < S4", alternating_group(4), symmetric_group(4)),
        ("Z5 < D5", cyclic_group(5), group_from_cycles(5, "(0 1 2 3 4)", "(1 4)(2 3)")),
        ("1 < S2", trivial_group(2), symmetric_group(2)),
    ]


def least_sensitivity(G: FiniteGroup, limit: int = 6) -> int | None:
    for m in range(1, limit + 1):
        if m_sensitivity(G, m, m + 2):
            return m
    return None


def check_sensitivity(level: str = "full") -> tuple[bool, str]:
    parts = []
    ok = True
    pairs = sensitivity_pairs() if level == "full" else sensitivity_pairs()[:5]
    for name, H, G in pairs:
        d = G.order // H.order
        m = least_sensitivity(H)
        holds = m is not None and bool(m_sensitivity(G, d * m, d * m + 2))
        ok &= holds
        parts.append(f"{name} (index {d}): H {m}-sensitive, G {d * m}-sensitive {holds}")
    specs = [e.spec for k in (1, 2) for e in enumerate_S_catalog(k)]
    n_max = 6 if level == "full" else 5
    bad = [s for s in specs
           if not atom_sensitivity(s, 4 * s.fiber * (s.L.order // s.H.order), n_max)]
    ok &= not bad
    parts.append(f"{len(specs)} atoms with |F| <= 2 at m = 4|F||L:H|, n <= {n_max}: "
                 f"{len(bad)} failures")
    return ok, "; ".join(parts)


# -- 12 --------------------------------------------------------------------------

def check_burnside(level: str = "full") -> tuple[bool, str]:
    n_max = 10 if level == "full" else 7
    specs = [e.spec for k in (1, 2, 3) for e in enumerate_S_catalog(k) if e.spec.base is QReduct.ORDER]
    bad = []
    for spec in specs:
        tables = order_class_tables(spec)
        fast = list(burnside_sequences(tables, len(tables), n_max).coefficients)
        if fast != subset_orbit_series(spec, n_max):
            bad.append(repr(spec))
    return not bad, f"{len(specs)} order-base atoms with |F| <= 3, n <= {n_max}: mismatches {bad or 'none'}"


# -- runner ----------------------------------------------------------------------

CRITERIA: tuple[tuple[int, str, Callable, float], ...] = (
    (1, "Fibonacci anchor", check_fibonacci, 10),
    (2, "gamma table", check_gamma_table, 1),
    (3, "gap rates at n=60", check_gap_rates, 1),
    (4, "Euler transform exactness", check_euler, 60),
    (5, "convolution exactness", check_convolution, 30),
    (6, "highly set-transitive catalog", check_hst_catalog, 300),
    (7, "cover round trip", check_cover_round_trip, 120),
    (8, "normal-pair classification", check_normal_pairs, 300),
    (9, "orbit-count identities", check_ois_identities, 120),
    (10, "growth trichotomy", check_trichotomy, 10),
    (11, "sensitivity bounds", check_sensitivity, 300),
    (12, "Burnside fast path", check_burnside, 120),
)


def run(number: int, level: str = "full") -> CriterionResult:
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    for num, title, fn, budget in CRITERIA:
        if num == number:
            start = time.perf_counter()
            try:
                passed, detail = fn(level)
            except Exception as exc:  # a crash is a failed criterion, reported as such
                passed, detail = False, f"{type(exc).__name__}: {exc}"
            return CriterionResult(num, title, passed, detail, time.perf_counter() - start, budget)
    raise ValueError(f"no criterion {number}")


def run_all(level: str = "full") -> list[CriterionResult]:
    return [run(num, level) for num, *_ in CRITERIA]
