import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle as o
from strategies import FINITE, exprs
from oligogrowth.errors import LimitExceeded, NotTruncatable
from oligogrowth.expr import (Atom, Finite, Prod, WrOmega, from_json, oracle_profile, profile,
                              structure_stats, to_json, triv, truncate)
from oligogrowth.permgrp import subset_orbit_count, symmetric_group, trivial_group
from oligogrowth.qatoms import make_spec


def test_truncation_of_atoms_is_refused():
    with pytest.raises(NotTruncatable):
        truncate(Atom(make_spec(1)), 3)


def test_oracle_budget():
    with pytest.raises(LimitExceeded):
        oracle_profile(WrOmega(Finite(symmetric_group(3))), 8, budget=1000)


def test_wreath_of_point_is_partitions():
    assert list(profile(WrOmega(triv()), 9)) == [1] * 10
    assert list(profile(WrOmega(WrOmega(triv())), 9)) == o.partitions(9)


def test_oracle_handles_many_part_kinds():
    rigid = make_spec(2, trivial_group(2), trivial_group(2), base="eq")
    e = WrOmega(WrOmega(Prod((triv(), Atom(rigid), Atom(rigid)))))
    assert list(oracle_profile(e, 4)) == list(profile(e, 4)) == [1, 5, 46, 345, 2538]


def test_structure_stats():
    S2 = symmetric_group(2)
    e = Prod((Atom(make_spec(2, S2, S2)), WrOmega(WrOmega(triv()))))
    s = structure_stats(e)
    assert (s.max_fiber_d, s.has_non_hst_atom, s.all_fibers_one, s.skeleton_rank) == (2, False, False, 2)


@given(exprs())
def test_json_round_trip(e):
    assert from_json(to_json(e)) == e


@given(exprs())
def test_profile_matches_oracle_route(e):
    try:
        expected = oracle_profile(e, 4, budget=200_000)
    except LimitExceeded:
        return
    assert profile(e, 4) == expected


@given(exprs(atoms=[], max_leaves=3), st.integers(1, 4))
def test_truncation_agrees_up_to_t(e, t):
    G = truncate(e, t).group
    if G.degree > 14:
        return
    p = profile(e, t)
    assert [subset_orbit_count(G, n) for n in range(t + 1)] == list(p)


@given(st.sampled_from(FINITE), st.sampled_from(FINITE))
def test_product_of_finite_groups(A, B):
    from oligogrowth.permgrp import direct_product
    D = direct_product(A, B)
    assert list(profile(Prod((Finite(A), Finite(B))), 4)) == [
        o.subset_orbits(frozenset(D.raw_elements), D.degree, n) if n <= D.degree else 0
        for n in range(5)]
