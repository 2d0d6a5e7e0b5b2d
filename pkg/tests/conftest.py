import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from utvpi.formats import parse_instance
from utvpi.model import Constraint, UtvpiInstance
from utvpi.oracle import ROW_FORMS

# one line per acceptance criterion, printed at the end of every run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def inst(text):
    """Parse an instance written in the file format, dedented."""
    lines = [ln.strip() for ln in text.strip().splitlines()]
    return parse_instance("\n".join(lines))


F = Fraction


@st.composite
def utvpi_instances(draw, max_n=4, max_m=6, box=(-3, 3), w_min=-3):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(0, max_m))
    rows = []
    for _ in range(m):
        form = draw(st.sampled_from([f for f in ROW_FORMS if len(f) <= n]))
        vars_ = draw(st.permutations(range(n)))[: len(form)]
        rows.append(Constraint(tuple(zip(vars_, form)), draw(st.integers(-4, 4))))
    w = draw(st.lists(st.integers(w_min, 3), min_size=n, max_size=n))
    base = UtvpiInstance(n, tuple(rows), tuple(w))
    return base.with_box(*box) if box else base


@pytest.fixture
def rng():
    return random.Random(12345)
