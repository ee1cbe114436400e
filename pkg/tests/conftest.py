import random

import pytest
from hypothesis import strategies as st

from twistkh.corpus import fixtures
from twistkh.generate import random_diagram


@pytest.fixture(scope="session")
def fixture_entries():
    return fixtures()


@pytest.fixture(scope="session")
def fx():
    return {e.name: e.diagram for e in fixtures()}


@st.composite
def diagrams(draw, max_n=5, allow_split=True):
    """Random signed Gauss codes, drawn through a seed so shrinking stays cheap."""
    seed = draw(st.integers(0, 2 ** 32 - 1))
    n = draw(st.integers(1, max_n))
    comps = draw(st.sampled_from((1, 2))) if allow_split and n > 1 else 1
    return random_diagram(random.Random(seed), n, comps)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
