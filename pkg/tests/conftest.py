import sys
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from grouptest import SetFamily

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


@st.composite
def families(draw, min_n=1, max_n=5, max_sets=6, allow_empty=True):
    n = draw(st.integers(min_n, max_n))
    lo = 0 if allow_empty else 1
    masks = draw(st.lists(st.integers(lo, 2**n - 1), max_size=max_sets))
    return SetFamily(n, tuple(masks))


@pytest.fixture
def singletons4():
    return SetFamily.from_sets(4, [[1], [2], [3], [4]])


@pytest.fixture
def k4_pairs():
    return SetFamily.from_sets(4, [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
