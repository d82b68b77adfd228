from math import comb

from hypothesis import given, settings, strategies as st

from pswidth import Formula, cla, cut_of, cut_subformulas, linear_decomposition, var
from pswidth.formula import mask_of
from pswidth.interval import mim_of_formula
from pswidth.oracle import brute_ps
from pswidth.ps import (compute_ps_tables, normalize, ps_complement_join, ps_join, ps_leaf,
                        ps_root_complement, ps_width)

from conftest import SAMPLE_NODE, decompositions_of, formulas


def leaf_of(d, element):
    return next(v for v, e in d.leaves.items() if e == element)


def test_normalize_sorts_and_dedups():
    assert normalize([5, 1, 5, 0, 1]) == (0, 1, 5)


def test_ps_leaf_clause_and_variable():
    f = Formula.from_lists([[1], [-1, 2]])
    d = linear_decomposition(f, [var(1), var(2), cla(0), cla(1)])
    assert ps_leaf(f, d, leaf_of(d, cla(0))) == (0,)
    # x1=1 satisfies c0, x1=0 satisfies c1 restricted to x1
    assert ps_leaf(f, d, leaf_of(d, var(1))) == (mask_of([0]), mask_of([1]))


def test_ps_leaf_variable_absent_from_clauses():
    f = Formula.from_lists([[2]], 2)
    d = linear_decomposition(f, [var(1), var(2), cla(0)])
    assert ps_leaf(f, d, leaf_of(d, var(1))) == (0,)


def test_root_complement():
    assert ps_root_complement() == (0,)
    assert ps_root_complement(Formula((), 0)) == (0,)


def test_ps_join_trivial():
    assert ps_join((0,), (0,), 0) == (0,)


def test_sample_families(sample):
    f, d = sample
    t = compute_ps_tables(f, d)
    assert t.sub[SAMPLE_NODE] == (mask_of([1]), mask_of([3]), mask_of([1, 3]))
    assert t.comp[SAMPLE_NODE] == (0, mask_of([2]))
    assert t.ps_value(SAMPLE_NODE) == 3
    a, b = d.children[SAMPLE_NODE]
    assert ps_join(t.sub[a], t.sub[b], d.cuts[SAMPLE_NODE][0]) == t.sub[SAMPLE_NODE]
    p, s = d.parent(SAMPLE_NODE), d.sibling(SAMPLE_NODE)
    assert ps_complement_join(t.sub[s], t.comp[p], d.cuts[SAMPLE_NODE][0]) == t.comp[SAMPLE_NODE]


def test_complement_join_at_child_of_root():
    f = Formula.from_lists([[1, 2], [-2]])
    d = linear_decomposition(f, [var(1), cla(0), var(2), cla(1)])
    t = compute_ps_tables(f, d)
    for v in d.children[d.root]:
        cm = d.cuts[v][0]
        s = t.sub[d.sibling(v)]
        assert t.comp[v] == normalize(c & cm for c in s)


def test_leaf_entries_match_ps_leaf(sample):
    f, d = sample
    t = compute_ps_tables(f, d)
    for v in d.leaves:
        assert t.sub[v] == ps_leaf(f, d, v)


def test_ps_width_examples(sample):
    f = Formula.from_lists([[1]])
    k, report = ps_width(f, linear_decomposition(f, [var(1), cla(0)]))
    assert k == 2
    assert sorted(r[1:] for r in report) == [(1, 1), (1, 2), (2, 1)]
    g = Formula.from_lists([[], []], 0)
    assert ps_width(g, linear_decomposition(g, [cla(0), cla(1)]))[0] == 1


@settings(max_examples=150, deadline=None)
@given(formulas(), st.integers(0, 10 ** 6))
def test_families_equal_brute_force(f, seed):
    for d in decompositions_of(f, seed):
        t = compute_ps_tables(f, d)
        for v in range(d.num_nodes):
            fv, fvbar = cut_subformulas(f, cut_of(d, v))
            assert t.sub[v] == brute_ps(fv)
            assert t.comp[v] == brute_ps(fvbar)


@settings(max_examples=100, deadline=None)
@given(formulas(), st.integers(0, 10 ** 6))
def test_pair_counters_and_join_bound(f, seed):
    for d in decompositions_of(f, seed):
        t = compute_ps_tables(f, d)
        k = t.width
        for v in range(d.num_nodes):
            assert list(t.sub[v]) == sorted(set(t.sub[v]))
            assert t.join_pairs[v] <= k * k and t.comp_pairs[v] <= k * k
            if d.children[v]:
                a, b = d.children[v]
                assert len(t.sub[v]) <= len(t.sub[a]) * len(t.sub[b]) == t.join_pairs[v]


@settings(max_examples=100, deadline=None)
@given(formulas(), st.integers(0, 10 ** 6))
def test_family_size_within_binomial_bound(f, seed):
    for d in decompositions_of(f, seed):
        t = compute_ps_tables(f, d)
        for v in range(d.num_nodes):
            for sub, fam in zip(cut_subformulas(f, cut_of(d, v)), (t.sub[v], t.comp[v])):
                k = mim_of_formula(sub)
                assert len(fam) <= sum(comb(sub.m, i) for i in range(k + 1))


def test_power_bound_fails_for_single_clause():
    """One clause over one variable: two PS sets but m^k = 1."""
    f = Formula.from_lists([[1]])
    assert len(brute_ps(f)) == 2 and mim_of_formula(f) == 1
    assert len(brute_ps(f)) > f.m ** mim_of_formula(f)
