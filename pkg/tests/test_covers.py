import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle as o
from oligogrowth.acceptance import _random_wreath_element, cover_corpus, lift_postconditions
from oligogrowth.covers import (DescentData, FiniteCover, analyze, build_lift, cover_isomorphism,
                                decompose, is_normalized, kernel_LH, normalize, split_cover)
from oligogrowth.errors import DegreeMismatch, InconsistentDescent, InvalidCover
from oligogrowth.permgrp import (FiniteGroup, all_subgroups_up_to_conjugacy, cyclic_group,
                                 fiber_partition, group_from_cycles, group_relations,
                                 symmetric_group, trivial_group)


@st.composite
def covers(draw):
    rng = draw(st.randoms(use_true_random=False))
    k, b = draw(st.sampled_from([(2, 2), (2, 3), (3, 2), (2, 4), (3, 3)]))
    gens = tuple(_random_wreath_element(rng, k, b) for _ in range(draw(st.integers(1, 2))))
    return FiniteCover.from_congruence(FiniteGroup(k * b, gens), fiber_partition(k, b))


def test_invalid_covers():
    with pytest.raises(InvalidCover):
        FiniteCover(symmetric_group(2), symmetric_group(1), (0,))
    with pytest.raises(InvalidCover):
        FiniteCover(symmetric_group(4), symmetric_group(2), (0, 0, 1, 1)).check()
    with pytest.raises(DegreeMismatch):
        kernel_LH(3, symmetric_group(2), symmetric_group(2), 2)


def test_split_cover_is_split():
    c = split_cover(2, trivial_group(2), symmetric_group(2), symmetric_group(3))
    an = analyze(c)
    assert an.split and an.kernel.order == 2


def test_lift_needs_linked_reference():
    c = split_cover(2, symmetric_group(2), symmetric_group(2), cyclic_group(2))
    data = DescentData(())
    with pytest.raises(InconsistentDescent):
        build_lift(normalize(c).cover, data)


@pytest.mark.parametrize("i", range(10))
def test_round_trip_on_corpus(i):
    c = cover_corpus(10)[i]
    Gt, data = decompose(c)
    assert is_normalized(Gt) and analyze(Gt, max_search_order=0).linked
    lift = build_lift(Gt, data)
    assert cover_isomorphism(c, lift) is not None
    assert lift_postconditions(lift, data)


@given(covers())
def test_binding_chain(c):
    an = analyze(c, max_search_order=0)
    for f in an.fibers:
        assert group_relations(f.pointwise_binding, f.binding).is_normal
        assert group_relations(f.binding, f.fiber_group).is_normal


@given(covers())
def test_round_trip(c):
    Gt, data = decompose(c)
    lift = build_lift(Gt, data)
    assert cover_isomorphism(c, lift) is not None
    assert lift_postconditions(lift, data)


PAIRS = [(H, L) for n in (2, 3) for L in all_subgroups_up_to_conjugacy(symmetric_group(n))
         for H in all_subgroups_up_to_conjugacy(L) if group_relations(H, L).is_normal]


@given(st.sampled_from(PAIRS), st.integers(1, 3))
def test_kernel_order_formula(pair, X):
    H, L = pair
    K = kernel_LH(H.degree, H, L, X)
    assert K.order == H.order ** X * (L.order // H.order)
    assert K.order == o.kernel_order(H.degree, frozenset(H.raw_elements), frozenset(L.raw_elements), X)


def test_isomorphism_rejects_different_orders():
    a = split_cover(2, symmetric_group(2), symmetric_group(2), cyclic_group(2))
    b = split_cover(2, trivial_group(2), symmetric_group(2), cyclic_group(2))
    assert cover_isomorphism(a, b) is None
    z4 = FiniteCover(group_from_cycles(4, "(0 2 1 3)"), symmetric_group(2), (0, 0, 1, 1))
    assert analyze(z4).kernel.order == 2
