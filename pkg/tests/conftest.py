import sys
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from approxseq import EXACT, PLFunc, Seq

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

small_ints = st.integers(min_value=-20, max_value=20)
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def int_seqs(min_size=1, max_size=24):
    return st.lists(small_ints, min_size=min_size, max_size=max_size).map(
        lambda xs: Seq(tuple(Fraction(x) for x in xs), EXACT)
    )


def rational_seqs(min_size=1, max_size=16):
    return st.lists(rationals, min_size=min_size, max_size=max_size).map(
        lambda xs: Seq(tuple(xs), EXACT)
    )


@st.composite
def plfuncs(draw, max_segments=6):
    a = draw(rationals)
    widths = draw(st.lists(st.fractions(min_value=Fraction(1, 4), max_value=5, max_denominator=6),
                           min_size=1, max_size=max_segments))
    ys = draw(st.lists(rationals, min_size=len(widths) + 1, max_size=len(widths) + 1))
    xs = [a]
    for w in widths:
        xs.append(xs[-1] + w)
    return PLFunc(tuple(xs), tuple(ys), EXACT)


@pytest.fixture
def S():
    def make(*values):
        return Seq(tuple(Fraction(v) for v in values), EXACT)
    return make


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[key])
