import random

import pytest
from hypothesis import strategies as st

from laurentgap.lattice import IntLaurentPoly


@st.composite
def polys(draw, dim=None, max_terms=6, coef=9, span=4, nonzero=False):
    d = dim if dim is not None else draw(st.integers(1, 3))
    n = draw(st.integers(1 if nonzero else 0, max_terms))
    exps = draw(st.lists(st.tuples(*[st.integers(-span, span)] * d), min_size=n, max_size=n, unique=True))
    cs = draw(st.lists(st.integers(-coef, coef).filter(bool), min_size=n, max_size=n))
    return IntLaurentPoly(d, dict(zip(exps, cs)))


def random_poly(rng: random.Random, dim: int, max_terms=6, coef=9, span=4, nonzero=True):
    while True:
        n = rng.randint(1 if nonzero else 0, max_terms)
        terms = {tuple(rng.randint(-span, span) for _ in range(dim)): rng.choice([-1, 1]) * rng.randint(1, coef)
                 for _ in range(n)}
        p = IntLaurentPoly(dim, terms)
        if p.is_zero() and nonzero:
            continue
        return p


@pytest.fixture
def rng():
    return random.Random(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
