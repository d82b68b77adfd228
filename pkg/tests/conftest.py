import random

import pytest
from hypothesis import strategies as st

from pswidth import Formula, parse_decomposition
from pswidth.decomposition import formula_elements
from pswidth.generate import random_linear, random_tree

# Worked example.  Clause ids 0..3 are written c1..c4 below:
#   c1 = {-x1, x2}, c2 = {x1, -x2, x3}, c3 = {x1, -x4, x5}, c4 = {x2, -x3, x4}
# Node 1 covers {c1, c3, x1, x2}.
SAMPLE_CLAUSES = [[-1, 2], [1, -2, 3], [1, -4, 5], [2, -3, 4]]
SAMPLE_DECOMP = """\
nodes 17
root 0
edge 0 1
edge 0 2
edge 1 3
edge 1 4
edge 3 5
edge 3 6
edge 4 7
edge 4 8
edge 2 9
edge 2 10
edge 9 11
edge 9 12
edge 10 13
edge 10 14
edge 14 15
edge 14 16
leaf 5 v1
leaf 6 c0
leaf 7 v2
leaf 8 c2
leaf 11 v3
leaf 12 c1
leaf 13 v4
leaf 15 v5
leaf 16 c3
"""
SAMPLE_NODE = 1


@pytest.fixture
def sample():
    f = Formula.from_lists(SAMPLE_CLAUSES, 5)
    return f, parse_decomposition(SAMPLE_DECOMP, f)


@st.composite
def formulas(draw, max_vars=6, max_clauses=6, max_len=4, weighted=False):
    n = draw(st.integers(1, max_vars))
    lit = st.integers(1, n).flatmap(lambda x: st.sampled_from([x, -x]))
    clauses = draw(st.lists(st.lists(lit, max_size=max_len), max_size=max_clauses))
    weights = None
    if weighted:
        weights = draw(st.lists(st.integers(0, 2 ** 64), min_size=len(clauses), max_size=len(clauses)))
    return Formula.from_lists(clauses, n, weights)


def decompositions_of(formula, seed):
    """A random linear and a random general tree for ``formula`` (empty if no elements)."""
    if not formula_elements(formula):
        return []
    rng = random.Random(seed)
    return [random_linear(formula, rng), random_tree(formula, rng)]


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""
    def _report(number, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line
    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
