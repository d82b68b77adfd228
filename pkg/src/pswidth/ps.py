"""Precisely satisfiable clause-set families over a branch decomposition.

For every node v the engine computes PS(F_v) (clauses outside delta(v)
induced on the variables inside) bottom-up and PS(F_vbar) (clauses inside
induced on the variables outside) top-down.  Families are tuples of clause
masks sorted ascending by integer value, so sort order is lexicographic on
the membership vector read from the highest clause id down.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .decomposition import BranchDecomposition, Element, var
from .formula import ClauseSet, Formula

PSFamily = Tuple[ClauseSet, ...]

EMPTY_FAMILY: PSFamily = (0,)


def normalize(sets) -> PSFamily:
    """Sort, then drop duplicates by comparing neighbours only."""
    ordered = sorted(sets)
    out = []
    for s in ordered:
        if not out or out[-1] != s:
            out.append(s)
    return tuple(out)


def _combine(a: PSFamily, b: PSFamily, keep: ClauseSet):
    out = []
    pairs = 0
    for c1 in a:
        for c2 in b:
            pairs += 1
            out.append((c1 | c2) & keep)
    return normalize(out), pairs


def leaf_family(formula: Formula, element: Element) -> PSFamily:
    """PS(F_l) of a leaf: {empty} for a clause, the two one-variable outcomes for a variable."""
    if element.is_clause:
        return EMPTY_FAMILY
    x = element.index
    return normalize([formula.sat_mask(x, 0), formula.sat_mask(x, 1)])


def ps_leaf(formula: Formula, d: BranchDecomposition, leaf: int) -> PSFamily:
    return leaf_family(formula, d.leaves[leaf])


def ps_root_complement(formula: Formula = None, d: BranchDecomposition = None) -> PSFamily:
    """PS(F_rbar): every clause induced on no variables, so only the empty set."""
    return EMPTY_FAMILY


def ps_join(a: PSFamily, b: PSFamily, clause_side: ClauseSet) -> PSFamily:
    """PS(F_v) from the children's families; ``clause_side`` is cla(delta(v))."""
    return _combine(a, b, ~clause_side)[0]


def ps_complement_join(sibling: PSFamily, parent_comp: PSFamily, clause_side: ClauseSet) -> PSFamily:
    """PS(F_vbar) from PS(F_s) of the sibling and PS(F_pbar) of the parent.

    Members are cut down to cla(delta(v)), the clause universe of F_vbar.
    """
    return _combine(sibling, parent_comp, clause_side)[0]


@dataclass
class PSTables:
    """Families per node with the loop counters of both passes.

    ``sub[v]`` is PS(F_v) and ``comp[v]`` is PS(F_vbar).  ``join_pairs[v]``
    counts the pairs visited while building ``sub[v]`` (0 at leaves) and
    ``comp_pairs[v]`` those visited for ``comp[v]`` (0 at the root).
    """

    sub: List[PSFamily]
    comp: List[PSFamily]
    join_pairs: List[int]
    comp_pairs: List[int]

    def ps_value(self, v: int) -> int:
        return max(len(self.sub[v]), len(self.comp[v]))

    @property
    def width(self) -> int:
        return max(self.ps_value(v) for v in range(len(self.sub)))


def compute_ps_tables(formula: Formula, d: BranchDecomposition) -> PSTables:
    n = d.num_nodes
    sub: List[PSFamily] = [()] * n
    comp: List[PSFamily] = [()] * n
    join_pairs = [0] * n
    comp_pairs = [0] * n
    for v in d.postorder:
        ch = d.children[v]
        if not ch:
            sub[v] = ps_leaf(formula, d, v)
            continue
        sub[v], join_pairs[v] = _combine(sub[ch[0]], sub[ch[1]], ~d.cuts[v][0])
    for v in d.bfs_order:
        p = d.parent(v)
        if p is None:
            comp[v] = ps_root_complement(formula, d)
            continue
        s = d.sibling(v)
        comp[v], comp_pairs[v] = _combine(sub[s], comp[p], d.cuts[v][0])
    return PSTables(sub, comp, join_pairs, comp_pairs)


def ps_width(formula: Formula, d: BranchDecomposition, tables: PSTables = None):
    """Return ``(k, report)`` with report rows ``(node, |PS(F_v)|, |PS(F_vbar)|)``."""
    if tables is None:
        tables = compute_ps_tables(formula, d)
    report = [(v, len(tables.sub[v]), len(tables.comp[v])) for v in range(d.num_nodes)]
    return max(max(a, b) for _, a, b in report), report


def _fold_variables(formula: Formula, variables, keep: ClauseSet) -> PSFamily:
    fam = EMPTY_FAMILY
    for x in variables:
        fam, _ = _combine(fam, leaf_family(formula, var(x)), keep)
    return fam


def greedy_order(formula: Formula) -> List[Element]:
    """Leaf order for the ``greedy-ps`` strategy.

    Each step appends the element minimising the ps-value of the new prefix
    cut, i.e. max(|PS(F_P)|, |PS(F_Pbar)|); ties go to the smaller sum of
    both sizes, then to the earlier element of the file order.  PS(F_P) is
    extended incrementally; PS(F_Pbar) is rebuilt from the variables still
    outside the prefix.
    """
    from .decomposition import file_order

    remaining: List[Element] = file_order(formula)
    order: List[Element] = []
    sub = EMPTY_FAMILY
    prefix_clauses = 0
    outside_vars = set(formula.variables)
    while remaining:
        best = None
        for pos, e in enumerate(remaining):
            cm = prefix_clauses | (1 << e.index if e.is_clause else 0)
            new_sub, _ = _combine(sub, leaf_family(formula, e), ~cm)
            rest = sorted(outside_vars - ({e.index} if not e.is_clause else set()))
            new_comp = _fold_variables(formula, rest, cm)
            key = (max(len(new_sub), len(new_comp)), len(new_sub) + len(new_comp), pos)
            if best is None or key < best[0]:
                best = (key, pos, new_sub, cm)
        _, pos, sub, prefix_clauses = best
        e = remaining.pop(pos)
        if not e.is_clause:
            outside_vars.discard(e.index)
        order.append(e)
    return order
