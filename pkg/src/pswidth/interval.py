"""Interval orderings of formulas and induced-matching measurements.

An ordering of cla(F) and var(F) is an interval ordering when, for every
variable x occurring in clause C:

* if x comes before C, every variable between them occurs in C;
* if C comes before x, x occurs in every clause between them.

Used as a leaf order, such an ordering gives a linear decomposition where
every prefix cut crosses at most one induced-matching edge in each
direction (variable left/clause right and clause left/variable right).
"""

from __future__ import annotations

from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .decomposition import (BranchDecomposition, Element, check_element_set, cla,
                            cut_of, cut_subformulas, formula_elements, linear_decomposition, var)
from .errors import DecompositionError, GuardError
from .formula import Formula

DEFAULT_ELEMENT_LIMIT = 10


class Violation(NamedTuple):
    variable: int
    clause: int
    witness: Element

    def __str__(self):
        return f"{var(self.variable)} {cla(self.clause)} {self.witness}"


def _incidences(formula: Formula):
    return sorted((x, c.id) for c in formula.clauses for x in c.variables)


def verify_interval_ordering(formula: Formula, order: Sequence[Element]) -> Optional[Violation]:
    """None if ``order`` is an interval ordering, else the first violation.

    Violations are ranked by (variable, clause, witness index).
    """
    order = list(order)
    check_element_set(formula, order, "ordering")
    pos = {e: i for i, e in enumerate(order)}
    by_id = formula.by_id
    for x, j in _incidences(formula):
        a, b = pos[var(x)], pos[cla(j)]
        if a < b:
            bad = [e.index for e in order[a + 1:b]
                   if not e.is_clause and e.index not in by_id[j].variables]
            if bad:
                return Violation(x, j, var(min(bad)))
        else:
            bad = [e.index for e in order[b + 1:a] if e.is_clause and x not in by_id[e.index].variables]
            if bad:
                return Violation(x, j, cla(min(bad)))
    return None


def _prefix_violates(order, pos, adj):
    """True if the placed prefix already forces a violation in every completion.

    Only violations involving the newest element need checking: as the
    closing endpoint of an incidence, or as a witness lying after a placed
    endpoint whose partner is still unplaced.
    """
    p = len(order) - 1
    new = order[p]
    for other in adj[new]:
        q = pos.get(other)
        if q is None or q == p:
            continue
        if any(_is_witness(other, new, w, adj) for w in order[q + 1:p]):
            return True
    for first in order[:p]:
        for second in adj[first]:
            if second not in pos and _is_witness(first, second, new, adj):
                return True
    return False


def _is_witness(first, second, w, adj):
    """Does ``w`` lying between incident elements ``first`` < ``second`` break the ordering?"""
    if not first.is_clause:
        # variable before clause: variables in between must occur in the clause
        return not w.is_clause and w not in adj[second]
    # clause before variable: clauses in between must contain the variable
    return w.is_clause and w not in adj[second]


def find_interval_ordering(formula: Formula, element_limit: int = DEFAULT_ELEMENT_LIMIT
                           ) -> Optional[List[Element]]:
    """Lexicographically first interval ordering by exhaustive backtracking, or None.

    Elements compare as (kind, index) tuples, so clauses come before
    variables.  Only prefixes that cannot be completed are pruned.
    """
    elements = sorted(formula_elements(formula))
    if len(elements) > element_limit:
        raise GuardError(f"{len(elements)} elements exceed the search limit {element_limit}; "
                         "supply an ordering instead")
    adj: Dict[Element, set] = {e: set() for e in elements}
    for x, j in _incidences(formula):
        adj[var(x)].add(cla(j))
        adj[cla(j)].add(var(x))
    order: List[Element] = []
    pos: Dict[Element, int] = {}

    def extend():
        if len(order) == len(elements):
            return True
        for e in elements:
            if e in pos:
                continue
            pos[e] = len(order)
            order.append(e)
            if not _prefix_violates(order, pos, adj) and extend():
                return True
            order.pop()
            del pos[e]
        return False

    return list(order) if extend() else None


def order_to_decomposition(formula: Formula, order: Sequence[Element]) -> BranchDecomposition:
    """Linear decomposition with leaf order ``order``, which must be an interval ordering."""
    bad = verify_interval_ordering(formula, order)
    if bad is not None:
        raise DecompositionError(f"not an interval ordering: {bad} violates betweenness")
    return linear_decomposition(formula, order)


class CutBigraph(NamedTuple):
    left: frozenset
    right: frozenset
    edges: Tuple[Tuple[Element, Element], ...]


def incidence_graph(formula: Formula) -> CutBigraph:
    """I(F) with variables on the left and clauses on the right."""
    edges = tuple((var(x), cla(j)) for x, j in _incidences(formula))
    return CutBigraph(frozenset(var(x) for x in formula.variables),
                      frozenset(cla(j) for j in formula.clause_ids), edges)


def crossing_bigraph(formula: Formula, side: Sequence[Element]) -> CutBigraph:
    """Edges of I(F) with exactly one endpoint in ``side``."""
    side = frozenset(side)
    everything = frozenset(formula_elements(formula))
    edges = tuple((a, b) for a, b in incidence_graph(formula).edges if (a in side) != (b in side))
    return CutBigraph(side & everything, everything - side, edges)


def max_induced_matching_size(g: CutBigraph) -> int:
    """Exact maximum induced matching by include/exclude search with memoisation.

    Two edges conflict when they share an endpoint or a third edge joins
    them; an induced matching is a conflict-free edge set.
    """
    edges = list(dict.fromkeys(g.edges))
    if not edges:
        return 0
    nbr: Dict[Element, set] = {}
    for a, b in edges:
        nbr.setdefault(a, set()).add(b)
        nbr.setdefault(b, set()).add(a)
    conflict = []
    for a, b in edges:
        touched = nbr[a] | nbr[b]
        mask = 0
        for j, (c, e) in enumerate(edges):
            if c in touched or e in touched:
                mask |= 1 << j
        conflict.append(mask)
    memo = {}

    def best(avail):
        if not avail:
            return 0
        hit = memo.get(avail)
        if hit is not None:
            return hit
        i = (avail & -avail).bit_length() - 1
        r = best(avail & ~(1 << i))
        if r < bin(avail).count("1"):
            r = max(r, 1 + best(avail & ~conflict[i]))
        memo[avail] = r
        return r

    return best((1 << len(edges)) - 1)


def mim_of_formula(formula: Formula) -> int:
    return max_induced_matching_size(incidence_graph(formula))


def mim_of_decomposition(formula: Formula, d: BranchDecomposition):
    """Per node ``(node, mim I(F_v), mim I(F_vbar))`` and the overall maximum."""
    rows = []
    for v in range(d.num_nodes):
        fv, fvbar = cut_subformulas(formula, cut_of(d, v))
        rows.append((v, mim_of_formula(fv), mim_of_formula(fvbar)))
    return rows, max((max(a, b) for _, a, b in rows), default=0)
