import json
import pathlib
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

HERE = pathlib.Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def derived():
    return json.loads((HERE / "data" / "derived_values.json").read_text())


@st.composite
def small_groups(draw, max_degree: int = 5, max_gens: int = 3):
    """A permutation group generated by a few random permutations."""
    from oligogrowth.permgrp import FiniteGroup, Permutation
    n = draw(st.integers(1, max_degree))
    gens = draw(st.lists(st.permutations(range(n)), max_size=max_gens))
    return FiniteGroup(n, tuple(Permutation(tuple(g)) for g in gens))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
