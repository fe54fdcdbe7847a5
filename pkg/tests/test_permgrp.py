import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle as o
from conftest import small_groups
from oligogrowth.errors import DegreeMismatch, LimitExceeded, NotACongruence
from oligogrowth.permgrp import (CongruencePartition, FiniteGroup, Permutation, alternating_group,
                                 burnside_orbit_counts, closure, congruences, cyclic_group,
                                 direct_product, fiber_partition, group_from_cycles,
                                 group_relations, is_congruence, is_highly_set_transitive,
                                 m_sensitivity, orbit_counts, pointwise_stabilizer,
                                 quotient_by_congruence, restriction, setwise_stabilizer, stirling2,
                                 symmetric_group, trivial_group, wreath)


def _raw(G):
    return frozenset(G.raw_elements)


def test_parse_and_compose():
    a = Permutation.parse("(0 1 2)", 3)
    b = Permutation.parse("(0 1)", 3)
    # a after b
    assert (a * b).images == (2, 1, 0)
    assert Permutation.parse("()", 2).is_identity()
    assert str(Permutation.parse("(0 2)(1 3)", 4)) == "(0 2)(1 3)"
    with pytest.raises(ValueError):
        Permutation.parse("(0 1", 2)
    with pytest.raises(ValueError):
        Permutation.parse("(0 0)", 2)
    with pytest.raises(DegreeMismatch):
        a * Permutation.identity(2)


def test_closure_limit():
    with pytest.raises(LimitExceeded):
        closure([Permutation.parse("(0 1 2 3 4 5 6)", 7), Permutation.parse("(0 1)", 7)],
                order_limit=100).order


def test_standard_groups():
    assert [symmetric_group(n).order for n in range(1, 6)] == [1, 2, 6, 24, 120]
    assert alternating_group(5).order == 60
    assert cyclic_group(6).order == 6
    assert trivial_group(3).order == 1
    assert wreath(symmetric_group(2), symmetric_group(2)).order == 8
    assert direct_product(cyclic_group(2), cyclic_group(3)).degree == 5


def test_relations():
    r = group_relations(alternating_group(4), symmetric_group(4))
    assert (r.is_subgroup, r.is_normal, r.index) == (True, True, 2)
    c = group_from_cycles(4, "(0 1)")
    r = group_relations(c, symmetric_group(4))
    assert (r.is_subgroup, r.is_normal) == (True, False)
    assert not group_relations(symmetric_group(4), cyclic_group(4)).is_subgroup


def test_stabilizers_and_restriction():
    S4 = symmetric_group(4)
    assert pointwise_stabilizer(S4, [0]).order == 6
    assert setwise_stabilizer(S4, [0, 1]).order == 4
    D = direct_product(symmetric_group(2), cyclic_group(3))
    assert restriction(D, [2, 3, 4]).order == 3
    with pytest.raises(ValueError):
        restriction(S4, [0, 1])


def test_quotient_by_congruence():
    W = wreath(symmetric_group(2), symmetric_group(3))
    q = quotient_by_congruence(W, fiber_partition(2, 3))
    assert q.group.order == 6
    bad = CongruencePartition.from_classes([0, 1, 0, 1])
    with pytest.raises(NotACongruence):
        quotient_by_congruence(symmetric_group(4), bad)
    assert is_congruence(W, fiber_partition(2, 3))


def test_hst():
    assert is_highly_set_transitive(symmetric_group(5))
    assert is_highly_set_transitive(alternating_group(4))
    assert not is_highly_set_transitive(cyclic_group(4))


def test_sensitivity_small():
    assert m_sensitivity(symmetric_group(3), 2, 4)
    assert not m_sensitivity(cyclic_group(3), 1, 3)


@given(small_groups())
def test_burnside_equals_orbit_search(G):
    for n in range(4):
        assert burnside_orbit_counts(G, n) == orbit_counts(G, n)


@given(small_groups())
def test_orbit_counts_match_oracle(G):
    raw = _raw(G)
    for n in range(1, 4):
        c = orbit_counts(G, n)
        assert c.u == o.subset_orbits(raw, G.degree, n)
        assert c.l == o.tuple_orbits(raw, G.degree, n, True)
        assert c.o == o.tuple_orbits(raw, G.degree, n, False)


@given(small_groups())
def test_count_bounds_and_stirling(G):
    for n in range(5):
        c = orbit_counts(G, n)
        assert c.u <= c.l <= math.factorial(n) * c.u or c.u == 0
        if n:
            ells = [orbit_counts(G, k).l for k in range(n + 1)]
            assert c.o == sum(stirling2(n, k) * ells[k] for k in range(1, n + 1))


@given(small_groups(), small_groups())
def test_normality_matches_oracle(A, B):
    if A.degree != B.degree:
        return
    r = group_relations(A, B)
    assert r.is_subgroup == (_raw(A) <= _raw(B))
    if r.is_subgroup:
        assert r.is_normal == o.is_normal(_raw(A), _raw(B))
        assert r.index * A.order == B.order


@given(small_groups(max_degree=4), st.lists(st.permutations(range(4)), max_size=2))
def test_congruences_shrink_in_supergroups(G, extra):
    if G.degree != 4:
        return
    big = FiniteGroup(4, G.generators + tuple(Permutation(tuple(p)) for p in extra))
    small_set = {tuple(E.class_of) for E in congruences(G)}
    assert {tuple(E.class_of) for E in congruences(big)} <= small_set
    assert len(small_set) == o.congruence_count(_raw(G), 4)
