import pytest
from hypothesis import strategies as st

from toeprank import LaurentPattern

# criterion id -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}


def ex_a():
    return LaurentPattern.build(("r1", "r2"), ("c1", "c2"),
                                {0: [("r1", "c1")], 1: [("r1", "c2"), ("r2", "c1")]})


def ex_b():
    full = [(r, c) for r in ("r1", "r2") for c in ("c1", "c2")]
    return LaurentPattern.build(("r1", "r2"), ("c1", "c2"),
                                {0: full, 1: [("r1", "c1"), ("r2", "c2")]})


def zero_pattern():
    return LaurentPattern.build(("r1", "r2"), ("c1", "c2"), {})


@pytest.fixture
def h_a():
    return ex_a()


@pytest.fixture
def h_b():
    return ex_b()


@st.composite
def patterns(draw, max_rows=4, max_cols=4, max_index=3):
    n = draw(st.integers(0, max_rows))
    m = draw(st.integers(0, max_cols))
    rows = [f"r{a}" for a in range(n)]
    cols = [f"c{b}" for b in range(m)]
    cells = [(r, c) for r in rows for c in cols]
    coeffs = {}
    for d in range(draw(st.integers(0, max_index + 1))):
        if cells:
            coeffs[d] = draw(st.sets(st.sampled_from(cells)))
    return LaurentPattern.build(rows, cols, coeffs)


@st.composite
def weighted_graphs(draw, max_side=6, min_weight=-5):
    from toeprank import WeightedBipartiteGraph

    n = draw(st.integers(0, max_side))
    m = draw(st.integers(0, max_side))
    cells = [(a, f"c{b}") for a in range(n) for b in range(m)]
    chosen = draw(st.sets(st.sampled_from(cells))) if cells else set()
    weight = {e: draw(st.integers(min_weight, 0)) for e in sorted(chosen)}
    return WeightedBipartiteGraph(list(range(n)), [f"c{b}" for b in range(m)], weight)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")
