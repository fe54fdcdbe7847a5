from hypothesis import strategies as st

from oligogrowth.expr import Atom, Finite, Prod, WrOmega
from oligogrowth.permgrp import alternating_group, cyclic_group, group_from_cycles, symmetric_group, trivial_group
from oligogrowth.qatoms import enumerate_S_catalog

FINITE = [trivial_group(1), symmetric_group(2), trivial_group(2), cyclic_group(3), symmetric_group(3),
          alternating_group(4), group_from_cycles(4, "(0 1)(2 3)", "(0 2)(1 3)")]
SPECS = [e.spec for k in (1, 2, 3) for e in enumerate_S_catalog(k)]
SMALL_SPECS = [s for s in SPECS if s.fiber <= 2]


def leaves(atoms=SMALL_SPECS):
    fin = st.sampled_from(FINITE).map(Finite)
    return st.one_of(fin, st.sampled_from(atoms).map(Atom)) if atoms else fin


def exprs(atoms=SMALL_SPECS, max_leaves: int = 4):
    return st.recursive(
        leaves(atoms),
        lambda kids: st.one_of(st.lists(kids, min_size=1, max_size=3).map(lambda c: Prod(tuple(c))),
                               kids.map(WrOmega)),
        max_leaves=max_leaves)
