"""Random formulas and decompositions for tests and experiments."""

from __future__ import annotations

import random
from typing import List, Optional, Tuple

from .decomposition import BranchDecomposition, Element, cla, formula_elements, linear_decomposition, var
from .formula import Clause, Formula, Literal


def random_formula(rng: random.Random, max_vars: int = 8, max_clauses: int = 8,
                   max_len: int = 4, weight_bits: Optional[int] = None,
                   duplicate_rate: float = 0.15) -> Formula:
    """Random CNF with clause lengths 0..max_len; some clauses repeat earlier ones."""
    n = rng.randint(1, max_vars)
    m = rng.randint(0, max_clauses)
    clauses = []
    for j in range(m):
        if clauses and rng.random() < duplicate_rate:
            lits = rng.choice(clauses).literals
        else:
            k = rng.randint(0, min(max_len, n))
            xs = rng.sample(range(1, n + 1), k)
            lits = frozenset(Literal(x, rng.random() < 0.5) for x in xs)
            if xs and rng.random() < 0.05:
                lits |= {Literal(xs[0], False), Literal(xs[0], True)}
        clauses.append(Clause(j, lits))
    weights = None
    if weight_bits is not None:
        weights = tuple(rng.randint(0, 2 ** weight_bits) for _ in range(m))
    return Formula(tuple(clauses), n, weights)


def random_linear(formula: Formula, rng: random.Random) -> BranchDecomposition:
    order = formula_elements(formula)
    rng.shuffle(order)
    return linear_decomposition(formula, order)


def random_tree(formula: Formula, rng: random.Random) -> BranchDecomposition:
    """Random binary tree: repeatedly join two random subtrees."""
    elements = formula_elements(formula)
    rng.shuffle(elements)
    children: List[tuple] = [()] * len(elements)
    leaves = {i: e for i, e in enumerate(elements)}
    forest = list(range(len(elements)))
    while len(forest) > 1:
        a, b = rng.sample(range(len(forest)), 2)
        left, right = forest[a], forest[b]
        children.append((left, right))
        forest = [t for i, t in enumerate(forest) if i not in (a, b)] + [len(children) - 1]
    return BranchDecomposition(tuple(children), forest[0], leaves)


def interval_model_formula(rng: random.Random, max_vars: int = 20, max_clauses: int = 20,
                           span: int = 40) -> Tuple[Formula, List[Element]]:
    """Formula whose incidence graph is an interval bigraph, with an interval ordering.

    Every variable and clause gets a random integer interval; x occurs in C
    (with a random sign) iff their intervals intersect.  Variables that meet
    no clause are dropped and the rest renumbered.  Sorting elements by
    right endpoint yields an interval ordering.
    """
    n = rng.randint(1, max_vars)
    m = rng.randint(1, max_clauses)

    def interval():
        a = rng.randint(0, span)
        return a, a + rng.randint(0, max(1, span // 4))

    xs = [interval() for _ in range(n)]
    cs = [interval() for _ in range(m)]
    hit = lambda p, q: p[0] <= q[1] and q[0] <= p[1]
    used = [i for i in range(n) if any(hit(xs[i], c) for c in cs)]
    renum = {old: new + 1 for new, old in enumerate(used)}
    clauses = []
    for j, c in enumerate(cs):
        lits = frozenset(Literal(renum[i], rng.random() < 0.5) for i in used if hit(xs[i], c))
        clauses.append(Clause(j, lits))
    formula = Formula(tuple(clauses), len(used))
    keyed = [((xs[i][1], 0, renum[i]), var(renum[i])) for i in used]
    keyed += [((cs[j][1], 1, j), cla(j)) for j in range(m)]
    order = [e for _, e in sorted(keyed)]
    return formula, order
