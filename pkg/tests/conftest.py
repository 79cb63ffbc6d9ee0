"""Shared hypothesis strategies and helpers."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

from thermoforge import Dist
from thermoforge.sampling import random_two_level

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def frac_list(xs):
    return [Fraction(x) for x in xs]


@st.composite
def dists(draw, n=None, min_n=2, max_n=5, zeros=True, positive=False):
    n = n or draw(st.integers(min_n, max_n))
    lo = 1 if positive or not zeros else 0
    w = draw(st.lists(st.integers(lo, 20), min_size=n, max_size=n))
    if sum(w) == 0:
        w[draw(st.integers(0, n - 1))] = 1
    s = sum(w)
    return Dist(Fraction(x, s) for x in w)


@st.composite
def two_level_dists(draw, min_n=2, max_n=4, shuffle=True):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    gamma = Fraction(draw(st.integers(1, 12)), 12)
    return random_two_level(random.Random(seed), n, shuffle=shuffle, gamma=gamma)


seeds = st.integers(0, 2**32 - 1)


# Acceptance criteria report their verdicts here; the summary hook prints them.
ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
