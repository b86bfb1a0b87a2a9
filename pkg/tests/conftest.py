import pytest
from hypothesis import strategies as st

from llsgraph import BNProblem, VanishingSeq

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    """Record one PASS/FAIL line per acceptance criterion for the summary."""
    return _ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def contexts(draw, max_d=9, max_r=4):
    d = draw(st.integers(0, max_d))
    r = draw(st.integers(0, min(d, max_r)))
    return r, d


@st.composite
def vanishing(draw, r, d):
    entries = draw(st.lists(st.integers(0, d), min_size=r + 1, max_size=r + 1, unique=True))
    return VanishingSeq(tuple(sorted(entries)), d)


@st.composite
def seq_pairs(draw, max_d=9, max_r=4):
    r, d = draw(contexts(max_d, max_r))
    return draw(vanishing(r, d)), draw(vanishing(r, d))


@st.composite
def problems(draw, max_g=6, max_d=9, max_r=4):
    a, b = draw(seq_pairs(max_d, max_r))
    g = draw(st.integers(0, max_g))
    return BNProblem(g, a.r, a.d, a, b)
