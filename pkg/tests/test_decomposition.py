import itertools

import pytest
from hypothesis import given, settings, strategies as st

from pswidth import (DecompositionError, Formula, ParseError, auto_decomposition, cla, cut_of,
                     cut_subformulas, emit_decomposition, linear_decomposition,
                     parse_decomposition, var)
from pswidth.decomposition import file_order, formula_elements, parse_ordering
from pswidth.formula import mask_of
from pswidth.oracle import brute_ps
from pswidth.ps import ps_width

from conftest import SAMPLE_NODE, decompositions_of, formulas


def test_linear_two_elements():
    f = Formula.from_lists([[1]])
    d = linear_decomposition(f, [var(1), cla(0)])
    assert d.num_nodes == 3
    assert d.children[d.root] and all(d.is_leaf(c) for c in d.children[d.root])
    assert d.is_linear


def test_linear_four_elements_is_caterpillar():
    f = Formula.from_lists([[1], [2]])
    order = [var(1), var(2), cla(0), cla(1)]
    d = linear_decomposition(f, order)
    assert len(d.internal_nodes) == 3
    assert d.is_linear
    assert d.leaf_order() == order
    cuts = sorted((cut_of(d, v) for v in d.internal_nodes), key=lambda c: bin(c.clause_side).count("1") + len(c.var_side))
    assert [(c.clause_side, c.var_side) for c in cuts] == [
        (0, {1, 2}), (mask_of([0]), {1, 2}), (mask_of([0, 1]), {1, 2})]
    # prefix of length 1 is the first leaf
    first = next(v for v in d.leaves if d.leaves[v] == var(1))
    assert cut_of(d, first) == (0, frozenset({1}))


def test_linear_rejects_bad_orders():
    f = Formula.from_lists([[1], [2]])
    with pytest.raises(DecompositionError, match="missing c1"):
        linear_decomposition(f, [var(1), var(2), cla(0)])
    with pytest.raises(DecompositionError, match="duplicate v1"):
        linear_decomposition(f, [var(1), var(1), var(2), cla(0), cla(1)])
    with pytest.raises(DecompositionError, match="unknown c7"):
        linear_decomposition(f, [var(1), var(2), cla(0), cla(1), cla(7)])


def test_unused_declared_variable_may_appear():
    f = Formula.from_lists([[2]], 3)
    d = linear_decomposition(f, [var(1), var(2), cla(0)])
    assert d.variables == {1, 2}


def test_parse_small_tree():
    f = Formula.from_lists([[1]])
    d = parse_decomposition("nodes 3\nroot 0\nedge 0 1\nedge 0 2\nleaf 1 v1\nleaf 2 c0\n", f)
    assert d.num_nodes == 3 and d.children[0] == (1, 2)
    assert d.leaves == {1: var(1), 2: cla(0)}


@pytest.mark.parametrize("text, match", [
    ("nodes 3\nroot 0\nedge 0 1\nedge 0 2\nleaf 1 v1\nleaf 2 c5\n", "unknown c5"),
    ("nodes 3\nroot 0\nedge 0 1\nleaf 1 v1\nleaf 2 c0\n", "node 0 has 1 children"),
    ("nodes 5\nroot 0\nedge 0 1\nedge 0 2\nedge 1 0\nedge 1 3\nleaf 2 c0\nleaf 3 v1\n", "points at the root"),
    ("nodes 5\nroot 0\nedge 0 1\nedge 0 2\nedge 3 4\nedge 3 1\nleaf 1 v1\nleaf 2 c0\nleaf 4 c0\n", "two parents"),
    ("nodes 3\nroot 0\nedge 0 1\nedge 0 2\nleaf 1 v1\nleaf 2 v1\n", "more than one leaf"),
    ("nodes 3\nroot 0\nedge 0 1\nedge 0 2\nleaf 1 v1\n", "leaf 2 has no element"),
    ("nodes 5\nroot 0\nedge 0 1\nedge 0 2\nedge 3 4\nedge 3 4\nleaf 1 v1\nleaf 2 c0\nleaf 4 c0\n", "twice"),
    ("nodes 3\nroot 0\nedge 0 1\nedge 0 2\nleaf 1 v1\nleaf 2 c0\nleaf 0 c0\n", "internal node 0"),
    ("nodes 3\nroot 0\nedge 0 1\nedge 0 5\nleaf 1 v1\nleaf 2 c0\n", "unknown child 5"),
])
def test_parse_rejects(text, match):
    f = Formula.from_lists([[1]])
    with pytest.raises(DecompositionError, match=match):
        parse_decomposition(text, f)


def test_parse_rejects_unknown_token():
    f = Formula.from_lists([[1]])
    with pytest.raises(ParseError, match="line 3"):
        parse_decomposition("nodes 3\nroot 0\nbranch 0 1\n", f)
    with pytest.raises(ParseError, match="line 5"):
        parse_decomposition("nodes 3\nroot 0\nedge 0 1\nedge 0 2\nleaf 1 x1\n", f)


def test_sample_cut(sample):
    f, d = sample
    cut = cut_of(d, SAMPLE_NODE)
    assert cut.clause_side == mask_of([0, 2]) and cut.var_side == {1, 2}
    fv, fvbar = cut_subformulas(f, cut)
    assert [sorted(l.to_dimacs() for l in c.literals) for c in fv.clauses] == [[-2, 1], [2]]
    assert [sorted(l.to_dimacs() for l in c.literals) for c in fvbar.clauses] == [[], [-4, 5]]
    assert [c.id for c in fvbar.clauses] == [0, 2]


def test_root_and_leaf_cuts(sample):
    f, d = sample
    assert cut_of(d, d.root) == (f.clause_mask, f.variables)
    fr, frbar = cut_subformulas(f, cut_of(d, d.root))
    assert fr.m == 0 and all(len(c) == 0 for c in frbar.clauses) and frbar.m == f.m
    leaf_x3 = next(v for v, e in d.leaves.items() if e == var(3))
    assert cut_of(d, leaf_x3) == (0, {3})
    leaf_c = next(v for v, e in d.leaves.items() if e == cla(1))
    fl, _ = cut_subformulas(f, cut_of(d, leaf_c))
    assert fl.m == 3 and all(len(c) == 0 for c in fl.clauses)


def test_sample_tree_is_not_linear(sample):
    assert not sample[1].is_linear


def test_linear_with_two_internal_children_at_root():
    f = Formula.from_lists([[1], [2]])
    text = ("nodes 7\nroot 0\nedge 0 1\nedge 0 2\nedge 1 3\nedge 1 4\nedge 2 5\nedge 2 6\n"
            "leaf 3 v1\nleaf 4 c0\nleaf 5 v2\nleaf 6 c1\n")
    assert parse_decomposition(text, f).is_linear


def test_file_order():
    f = Formula.from_lists([[2, 1], [3], [1, 3]])
    assert file_order(f) == [var(1), var(2), cla(0), var(3), cla(1), cla(2)]


def test_auto_file_order_two_elements():
    f = Formula.from_lists([[1]])
    d = auto_decomposition(f, "file-order")
    assert d.leaf_order() == [var(1), cla(0)]


def min_linear_width(f):
    return min(ps_width(f, linear_decomposition(f, p))[0]
               for p in itertools.permutations(formula_elements(f)))


def test_greedy_matches_exhaustive_minimum():
    f = Formula.from_lists([[1], [1]])
    d = auto_decomposition(f, "greedy-ps")
    assert min_linear_width(f) == 2
    assert ps_width(f, d)[0] <= 2


@pytest.mark.parametrize("strategy", ["file-order", "greedy-ps"])
def test_auto_strategies_validate_and_are_deterministic(strategy):
    f = Formula.from_lists([[1, -2], [2, 3], [-1, -3], [4], []], 5)
    d = auto_decomposition(f, strategy)
    d.validate(f)
    assert d.is_linear
    assert auto_decomposition(f, strategy) == d


def test_auto_unknown_strategy():
    with pytest.raises(ValueError):
        auto_decomposition(Formula.from_lists([[1]]), "best")


def test_parse_ordering():
    f = Formula.from_lists([[1]])
    assert parse_ordering("v1\n c0  # tail\n", f) == [var(1), cla(0)]
    with pytest.raises(ParseError):
        parse_ordering("v1 q0\n")
    with pytest.raises(DecompositionError):
        parse_ordering("v1\n", f)


@settings(max_examples=60)
@given(formulas(), st.integers(0, 10 ** 6))
def test_round_trip_and_disjoint_children(f, seed):
    for d in decompositions_of(f, seed):
        assert parse_decomposition(emit_decomposition(d), f) == d
        for v in d.internal_nodes:
            a, b = d.children[v]
            (ca, va), (cb, vb), (cv, vv) = d.cuts[a], d.cuts[b], d.cuts[v]
            assert ca & cb == 0 and va & vb == 0
            assert ca | cb == cv and va | vb == vv


@settings(max_examples=40)
@given(formulas(), st.integers(0, 10 ** 6))
def test_linear_has_len_minus_one_internal_nodes(f, seed):
    ds = decompositions_of(f, seed)
    if ds:
        L = len(formula_elements(f))
        assert len(ds[0].internal_nodes) == max(L - 1, 0)


@settings(max_examples=60)
@given(formulas(), st.integers(0, 10 ** 6))
def test_cut_symmetry_brute_force(f, seed):
    """ps-value of a cut equals that of its complement."""
    for d in decompositions_of(f, seed):
        for v in range(d.num_nodes):
            cut = cut_of(d, v)
            fv, fvbar = cut_subformulas(f, cut)
            comp = cut._replace(clause_side=f.clause_mask & ~cut.clause_side,
                                var_side=frozenset(range(1, f.num_vars + 1)) - cut.var_side)
            gv, gvbar = cut_subformulas(f, comp)
            value = max(len(brute_ps(fv)), len(brute_ps(fvbar)))
            assert value == max(len(brute_ps(gv)), len(brute_ps(gvbar)))
