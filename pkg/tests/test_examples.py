"""Worked examples from the module contracts, one test per module area."""

import math

import pytest

from oligogrowth.classify import (EXPONENTIAL, INTERMEDIATE, TOO_FAST, check_gap, classify_expr,
                                  gamma)
from oligogrowth.covers import (Descent, DescentData, FiniteCover, analyze, build_lift,
                                cover_isomorphism, decompose, g_cal, verify_omega_partition)
from oligogrowth.expr import (Atom, Finite, Prod, WrOmega, oracle_profile, profile,
                              structure_stats, triv, truncate)
from oligogrowth.permgrp import (CongruencePartition, FiniteGroup, Permutation,
                                 all_subgroups_up_to_conjugacy, alternating_group,
                                 congruence_count, cyclic_group, direct_product, fiber_partition,
                                 group_from_cycles, group_relations,
                                 is_highly_set_transitive, m_sensitivity, orbit_counts,
                                 quotient_by_congruence, subset_orbit_count, symmetric_group,
                                 trivial_group, wreath)
from oligogrowth.qatoms import (QReduct, agl_1_5, classify_normal_pair, enumerate_S_catalog,
                                hst_catalog, hst_name, make_spec, pgaml_2_8, pgl_2_8, validate_spec)
from oligogrowth.series import (OrbitSeries, convolve, cover_recursion, delta, euler_transform,
                                ones, pad, ratio, stirling_convert)
from oligogrowth.wordmodel import (LabeledWord, Word, atom_sensitivity, count_subset_orbits,
                                   same_orbit, word_action_group)

S2, S3, S4 = symmetric_group(2), symmetric_group(3), symmetric_group(4)
A3 = alternating_group(3)
FIB = Atom(make_spec(2, S2, S2))


def test_groups():
    assert group_from_cycles(3, "(0 1)", "(0 1 2)").order == 6
    assert FiniteGroup(5, (Permutation.parse("(0 1 2 3 4)", 5), Permutation.parse("(1 2 4 3)", 5))).order == 20
    assert FiniteGroup(4).order == 1
    c = orbit_counts(S4, 2)
    assert (c.u, c.l, c.o) == (1, 1, 2)
    assert subset_orbit_count(cyclic_group(4), 2) == 2
    assert all(subset_orbit_count(alternating_group(5), k) == 1 for k in range(6))
    r = group_relations(alternating_group(4), S4)
    assert (r.is_subgroup, r.is_normal, r.index) == (True, True, 2)
    r = group_relations(group_from_cycles(3, "(0 1)"), S3)
    assert (r.is_subgroup, r.is_normal, r.index) == (True, False, 3)
    r = group_relations(pgl_2_8(), pgaml_2_8())
    assert (r.is_normal, r.index) == (True, 3)


def test_constructions_and_congruences():
    D = direct_product(S2, S2)
    assert (D.order, D.degree, subset_orbit_count(D, 2)) == (4, 4, 3)
    W = wreath(S2, S3)
    assert (W.order, W.degree) == (48, 6)
    assert quotient_by_congruence(W, fiber_partition(2, 3)).group.same_elements(S3)
    assert congruence_count(trivial_group(2)) == 2
    assert congruence_count(S3) == 2
    assert congruence_count(D) >= 3 and congruence_count(D) >= congruence_count(S4)


def test_sensitivity_and_subgroups():
    assert m_sensitivity(S4, 2, 4)
    assert m_sensitivity(trivial_group(3), 2, 4)
    assert [H.order for H in all_subgroups_up_to_conjugacy(S3)] == [1, 2, 3, 6]
    assert [H.order for H in all_subgroups_up_to_conjugacy(cyclic_group(4))] == [1, 2, 4]
    twenty = [H for H in all_subgroups_up_to_conjugacy(symmetric_group(5)) if H.order == 20]
    assert len(twenty) == 1 and is_highly_set_transitive(twenty[0])
    assert is_highly_set_transitive(agl_1_5())


def test_specs_and_catalog():
    assert not validate_spec(make_spec(2, S2, S2))
    assert not validate_spec(make_spec(3, A3, S3, "cyc", turn="(0 1)"))
    assert validate_spec(make_spec(3, A3, A3, "cyc", turn="(0 1)"))[0].condition == "turn is not in L"
    assert [hst_name(G) for G in hst_catalog(4)] == ["S4", "A4"]
    assert [hst_name(G) for G in hst_catalog(5)] == ["S5", "A5", "AGL(1,5)"]
    assert [hst_name(G) for G in hst_catalog(9)] == ["S9", "A9", "PGL(2,8)", "PGammaL(2,8)"]
    assert {e.spec.base for e in enumerate_S_catalog(1)} == set(QReduct)
    assert len(enumerate_S_catalog(1)) == 5
    two = [e.spec for e in enumerate_S_catalog(2)]
    assert make_spec(2, S2, S2) in two
    nine = [e.spec for e in enumerate_S_catalog(9)]
    assert any(s.base is QReduct.CYC and s.H.order == 504 and s.L.order == 1512
               and s.turn not in s.H for s in nine)


def test_normal_pair_examples():
    r = classify_normal_pair(make_spec(3, A3, A3), make_spec(3, A3, S3))
    assert (r.is_normal, r.matched_case, r.quotient_iso_tag) == (True, "iii", "Z2")
    r = classify_normal_pair(make_spec(3, A3, A3), make_spec(3, A3, S3, "betw"))
    assert (r.is_normal, r.matched_case, r.quotient_iso_tag) == (True, "iv", "Z2xZ2")
    r = classify_normal_pair(FIB.spec, FIB.spec)
    assert (r.matched_case, r.quotient_iso_tag) == ("i", "Z1")


def test_word_model_examples():
    betw = make_spec(2, base="betw", flip="(0 1)")
    assert same_orbit(Word(((0,), (1,))), Word(((0,), (1,))), betw)
    assert same_orbit(Word(((0,), (0,))), Word(((1,), (1,))), betw)
    assert [count_subset_orbits(FIB.spec, n) for n in range(6)] == [1, 1, 2, 3, 5, 8]
    assert all(count_subset_orbits(make_spec(1, base="cyc", turn="()"), n) == 1 for n in range(6))
    assert count_subset_orbits(make_spec(2, S2, S2, "eq"), 2) == 2
    assert atom_sensitivity(make_spec(1), 4, 6)
    assert atom_sensitivity(FIB.spec, 8, 6)
    assert atom_sensitivity(make_spec(1, base="eq"), 2, 5)
    G = word_action_group(make_spec(2), 2)
    assert (G.degree, G.order) == (9, 1)
    G = word_action_group(FIB.spec, 1)
    assert (G.degree, G.order) == (3, 2)


def test_series_examples():
    assert list(convolve(ones(5), ones(5))) == [1, 2, 3, 4, 5, 6]
    fib = profile(FIB, 6)
    assert convolve(fib, delta(6)) == fib
    # the contract's worked sum adds its own terms wrongly; the sum of the listed terms is 20
    assert convolve(fib, fib)[4] == 20 == oracle_profile(Prod((FIB, FIB)), 4)[4]
    assert list(euler_transform(ones(9))) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]
    assert list(euler_transform(pad([1, 1], 6))) == [1] * 7
    assert euler_transform(pad([1, 2], 2))[2] == 3
    assert list(cover_recursion([1, 1], 6)) == [1, 1, 2, 3, 5, 8, 13]
    assert list(cover_recursion([1], 5)) == [1] * 6
    # the contract lists 31 at n=5; the recursion and the brute-force oracle both give 30
    assert list(cover_recursion([1, 2, 1, 1], 5)) == [1, 1, 3, 6, 14, 30]
    assert stirling_convert(OrbitSeries((1, 1, 2), "l"), "o")[2] == 3
    assert list(stirling_convert(OrbitSeries((1,) * 5, "l"), "o")) == [1, 1, 2, 5, 15]
    assert list(stirling_convert(OrbitSeries((1, 1, 0, 0), "l"), "o")) == [1, 1, 1, 1]
    assert abs(ratio(profile(FIB, 30), 30) - (1 + math.sqrt(5)) / 2) < 1e-6
    assert ratio(ones(5), 5) == 1
    assert abs(ratio(cover_recursion([1, 1, 1], 40), 40) - gamma(3).value) < 1e-6


def test_expression_examples():
    assert list(profile(FIB, 6)) == [1, 1, 2, 3, 5, 8, 13]
    assert list(profile(WrOmega(triv()), 5)) == [1] * 6
    q = Atom(make_spec(1))
    assert list(profile(Prod((q, q)), 4)) == [1, 2, 3, 4, 5]
    e = WrOmega(Finite(S2))
    assert oracle_profile(e, 4) == profile(e, 4) == euler_transform(pad([1, 1, 1], 4))
    e = Prod((Finite(S2), Finite(S3)))
    assert oracle_profile(e, 5) == profile(e, 5)
    e = Atom(make_spec(1, base="sep", turn="()"))
    assert list(oracle_profile(e, 6)) == list(profile(e, 6)) == [1] * 7
    t = truncate(WrOmega(triv()), 3).group
    assert t.same_elements(S3) and [subset_orbit_count(t, n) for n in range(4)] == [1, 1, 1, 1]
    t = truncate(WrOmega(Finite(S2)), 2).group
    assert (t.order, t.degree) == (8, 4)
    t = truncate(Prod((WrOmega(triv()), Finite(S2))), 3).group
    assert (t.order, t.degree) == (12, 5)
    s = structure_stats(FIB)
    assert (s.max_fiber_d, s.has_non_hst_atom) == (2, False)
    assert structure_stats(Atom(make_spec(4, cyclic_group(4)))).has_non_hst_atom
    s = structure_stats(WrOmega(Finite(S2)))
    assert (s.max_fiber_d, s.skeleton_rank) == (0, 1)


def test_cover_analysis_examples():
    an = analyze(FiniteCover.from_congruence(wreath(S2, S3), fiber_partition(2, 3)))
    assert an.kernel.order == 8 and an.strongly_split and not an.linked
    z4 = FiniteCover(group_from_cycles(4, "(0 2 1 3)"), S2, (0, 0, 1, 1))
    an = analyze(z4)
    assert an.kernel.order == 2 and an.split is False
    ident = FiniteCover(S3, S3, (0, 1, 2))
    an = analyze(ident)
    assert an.trivial and an.strongly_trivial and an.split and an.linked


def test_lift_and_decompose_examples():
    base = FiniteCover(S2, S2, (0, 1))
    D = DescentData((Descent(S2, S2, (Permutation.identity(1),)),))
    assert build_lift(base, D).total.same_elements(wreath(S2, S2))
    c = FiniteCover.from_congruence(wreath(S2, S3), fiber_partition(2, 3))
    Gt, data = decompose(c)
    assert all(len(f) == 1 for f in Gt.fibers)
    assert all(d.B.same_elements(S2) and d.F.same_elements(S2) for d in data.per_orbit)
    assert cover_isomorphism(c, build_lift(Gt, data)) is not None
    ident = FiniteCover(S3, S3, (0, 1, 2))
    Gt, data = decompose(ident)
    assert cover_isomorphism(ident, Gt) is not None
    z4 = FiniteCover(group_from_cycles(4, "(0 2 1 3)"), S2, (0, 0, 1, 1))
    Gt, data = decompose(z4)
    assert [len(f) for f in Gt.fibers] == [2, 2]
    d = data.per_orbit[0]
    assert d.B.order == 1 and d.F.order == 2 and d.phi[0].degree == 2
    assert cover_isomorphism(z4, build_lift(Gt, data)) is not None


def test_truncation_templates():
    one = FiniteGroup(1)
    assert g_cal(one, [[0]], [one], 3).group.order == 1
    swap = FiniteGroup(2, (Permutation.parse("(0 1)", 2),))
    idp = FiniteGroup(2)
    G = g_cal(swap, [[], [0], [1]], [idp, idp, idp], 2).group
    assert (G.degree, G.order) == (4, 8)
    W = wreath(S2, S3)
    fibers = fiber_partition(2, 3)
    everything = CongruencePartition.from_classes([0] * 6)
    assert verify_omega_partition(W, [], everything, fibers, 3).ok
    Z = wreath(S2, cyclic_group(3))
    assert not verify_omega_partition(Z, [], everything, fibers, 3).ok
    eq = CongruencePartition.from_classes(range(4))
    all4 = CongruencePartition.from_classes([0] * 4)
    assert not verify_omega_partition(FiniteGroup(4), [], all4, eq, 4).ok


def test_growth_examples():
    assert gamma(1).value == 1
    assert abs(gamma(2).value - (1 + math.sqrt(5)) / 2) < 1e-12
    assert abs(gamma(5).value - 1.966) < 1e-3
    c = classify_expr(FIB)
    assert (c.tag, c.d) == (EXPONENTIAL, 2)
    assert classify_expr(Atom(make_spec(4, cyclic_group(4)))).tag == TOO_FAST
    assert classify_expr(WrOmega(WrOmega(triv()))).tag == INTERMEDIATE
    assert check_gap(FIB, 60, 1e-6).passed
    r = check_gap(Atom(make_spec(3, S3, S3)), 60, 1e-6)
    assert r.passed and abs(r.target - 1.839) < 1e-3
    r = check_gap(WrOmega(triv()), 40, 1e-12)
    assert r.passed and r.max_deviation == 0
