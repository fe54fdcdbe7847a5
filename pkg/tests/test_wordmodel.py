import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle as o
from oligogrowth.errors import LimitExceeded
from oligogrowth.permgrp import subset_orbit_count, symmetric_group
from oligogrowth.qatoms import QReduct, enumerate_S_catalog, make_spec
from oligogrowth.series import cover_recursion
from oligogrowth.wordmodel import (LabeledWord, Word, all_words, apply_raw_move, canonical_form,
                                   count_all_tuple_orbits, count_subset_orbits, count_tuple_orbits,
                                   normality_witness, raw_moves, same_orbit, word_action_group)

SPECS = [e.spec for k in (1, 2, 3) for e in enumerate_S_catalog(k)]
TURNING = [s for s in SPECS if s.turn is not None]


def _oracle(spec):
    return o.AtomOracle(spec.fiber, frozenset(spec.H.raw_elements), frozenset(spec.L.raw_elements),
                        spec.base.value, spec.flip.images if spec.flip else None,
                        spec.turn.images if spec.turn else None)


def test_word_validation():
    with pytest.raises(ValueError):
        Word(((0,), ()))
    with pytest.raises(ValueError):
        LabeledWord((((0, 0),), ((1, 0),)))
    w = LabeledWord.from_tuple([(1, 5), (0, 2), (1, 2)])
    assert w.letters == (((0, 1), (1, 2)), ((1, 0),))
    assert Word.from_json(Word(((1, 0), (2,))).to_json()) == Word(((0, 1), (2,)))


def test_budgets():
    spec = SPECS[0]
    with pytest.raises(LimitExceeded):
        count_subset_orbits(spec, 13)
    with pytest.raises(LimitExceeded):
        count_tuple_orbits(spec, 9)


def test_word_group_of_swapping_fiber():
    S2 = symmetric_group(2)
    assert word_action_group(make_spec(2, S2, S2), 1).order == 2


def test_witness_for_missing_flip():
    N = make_spec(2, base="betw", flip="(0 1)")
    G = make_spec(2, base="betw")
    w = normality_witness(N, G)
    assert w is not None and w.kind == "containment"
    assert same_orbit(w.first, w.second, N) and not same_orbit(w.first, w.second, G)


def test_no_witness_for_normal_pair():
    S2 = symmetric_group(2)
    assert normality_witness(make_spec(2, S2, S2, "order"), make_spec(2, S2, S2, "betw"),
                             max_points=3, max_length=3) is None


@given(st.sampled_from(TURNING), st.data())
def test_turn_power_is_global_turn(spec, data):
    m = data.draw(st.integers(1, 3))
    word = data.draw(st.sampled_from(all_words(spec.fiber, m)))
    w = word
    for _ in range(m):
        w = apply_raw_move(spec, w, ("turn",))
    sigma = spec.turn
    expected = tuple(tuple(l[sigma.inverse()(p)] for p in range(spec.fiber)) for l in word)
    assert w == expected


@given(st.sampled_from(SPECS), st.data())
def test_canonical_form_is_orbit_invariant(spec, data):
    m = data.draw(st.integers(1, 3))
    letters = data.draw(st.lists(st.sets(st.integers(0, spec.fiber - 1), min_size=1),
                                 min_size=m, max_size=m))
    w = Word(tuple(tuple(l) for l in letters))
    c = canonical_form(w, spec)
    assert canonical_form(c, spec) == c
    internal = tuple(tuple(1 if p in l else 0 for p in range(spec.fiber)) for l in w.letters)
    moves = raw_moves(spec, m)
    if not moves:
        return
    mv = data.draw(st.sampled_from(moves))
    moved = apply_raw_move(spec, internal, mv)
    moved_word = Word(tuple(tuple(p for p, b in enumerate(l) if b) for l in moved))
    assert canonical_form(moved_word, spec) == c


@pytest.mark.parametrize("spec", SPECS[:40], ids=repr)
def test_counts_match_oracle(spec):
    a = _oracle(spec)
    assert [count_subset_orbits(spec, n) for n in range(5)] == [a.u(n) for n in range(5)]
    assert [count_tuple_orbits(spec, n) for n in range(4)] == [a.ell(n) for n in range(4)]


@pytest.mark.parametrize("spec", [s for s in SPECS if s.base is QReduct.ORDER and s.H.order == s.L.order],
                         ids=repr)
def test_order_base_recursion(spec):
    h = [subset_orbit_count(spec.H, i) for i in range(1, spec.fiber + 1)]
    assert [count_subset_orbits(spec, n) for n in range(7)] == list(cover_recursion(h, 6))


def test_all_tuples_from_injective_cores():
    spec = SPECS[0]
    assert count_all_tuple_orbits(spec, 3) == sum(
        o.stirling2(3, k) * count_tuple_orbits(spec, k) for k in range(1, 4))
