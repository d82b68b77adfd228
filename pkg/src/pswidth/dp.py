"""Dynamic programs for weighted MaxSAT and #SAT over a branch decomposition.

The table of node v is indexed by pairs (C_v, C_vbar) from
PS(F_v) x PS(F_vbar).  In ``maxsat`` mode an entry holds the best
assignment of var(delta(v)) that satisfies exactly C_v among the outside
clauses, "best" meaning the largest weight of sat(F, tau) minus C_vbar.
In ``count`` mode an entry holds the number of assignments tau of
var(delta(v)) with sat(F_v, tau) = C_v whose inside clauses not in C_vbar
are all satisfied by tau.

Assignments are int masks (bit x set iff variable x is true); their domain
is implicit, namely the variables below the node.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, NamedTuple, Optional

from .decomposition import BranchDecomposition, auto_decomposition, formula_elements
from .errors import ConsistencyError
from .formula import Assignment, Formula, weight_of
from .ps import PSTables, compute_ps_tables

MODES = ("maxsat", "count")


class MaxEntry(NamedTuple):
    assignment: int
    score: int


@dataclass
class DPTable:
    node: int
    mode: str
    entries: dict


@dataclass
class DPRun:
    tables: List[DPTable]
    families: PSTables
    triples: List[int]
    """Per node, the number of (C_c1, C_c2, C_vbar) triples visited (0 at leaves)."""


class MaxSatResult(NamedTuple):
    weight: int
    witness: Assignment


class _Weights:
    """Memoised clause-mask weights."""

    def __init__(self, formula):
        self.formula = formula
        self.unit = formula.weights is None
        self.cache = {}

    def __call__(self, mask):
        if self.unit:
            return bin(mask).count("1")
        w = self.cache.get(mask)
        if w is None:
            w = self.cache[mask] = weight_of(self.formula, mask)
        return w


def _sat_of(formula: Formula, assignment: int, var_mask: int) -> int:
    """sat(F, tau) for tau given as a value mask over the variables in ``var_mask``."""
    sat = 0
    x = 0
    while var_mask >> x:
        if var_mask >> x & 1:
            sat |= formula.sat_mask(x, assignment >> x & 1)
        x += 1
    return sat


def leaf_table(formula: Formula, d: BranchDecomposition, leaf: int, families: PSTables,
               mode: str, weigh=None) -> DPTable:
    """Table of a leaf, filled by trying the (at most two) assignments of its variable.

    In maxsat mode ties are broken towards value 0.
    """
    weigh = weigh or _Weights(formula)
    cm, vm = d.cuts[leaf]
    x = vm.bit_length() - 1
    candidates = [0] if vm == 0 else [0, 1 << x]
    outcomes = [(tau, _sat_of(formula, tau, vm)) for tau in candidates]
    entries = {}
    for c in families.sub[leaf]:
        for cbar in families.comp[leaf]:
            if mode == "count":
                entries[c, cbar] = sum(1 for _, s in outcomes
                                       if s & ~cm == c and cm & ~cbar & ~s == 0)
            else:
                best = None
                for tau, s in outcomes:
                    if s & ~cm != c:
                        continue
                    score = weigh(s & ~cbar)
                    if best is None or score > best.score:
                        best = MaxEntry(tau, score)
                entries[c, cbar] = best
    return DPTable(leaf, mode, entries)


def merge_tables(formula: Formula, d: BranchDecomposition, v: int, t1: DPTable, t2: DPTable,
                 families: PSTables, mode: str, weigh=None, check: bool = False):
    """Combine the children's tables into the table of ``v``.

    Loops over PS(F_c1) x PS(F_c2) x PS(F_vbar) and reconstructs the other
    three indices from each triple.  Returns ``(table, triples_visited)``.
    With ``check`` every maxsat score is recomputed from its assignment.
    """
    weigh = weigh or _Weights(formula)
    c1, c2 = d.children[v]
    cm_v = d.cuts[v][0]
    cm_1 = d.cuts[c1][0]
    cm_2 = d.cuts[c2][0]
    fam_vbar = families.comp[v]
    count = mode == "count"
    init = 0 if count else None
    entries = {(c, cbar): init for c in families.sub[v] for cbar in fam_vbar}
    e1, e2 = t1.entries, t2.entries
    triples = 0
    for s1 in families.sub[c1]:
        for s2 in families.sub[c2]:
            cv = (s1 | s2) & ~cm_v
            for cbar in fam_vbar:
                triples += 1
                cbar1 = (s2 | cbar) & cm_1
                cbar2 = (s1 | cbar) & cm_2
                try:
                    a = e1[s1, cbar1]
                    b = e2[s2, cbar2]
                except KeyError as exc:
                    raise ConsistencyError(
                        f"node {v}: reconstructed child index {exc.args[0]} is not in the child's table"
                    ) from None
                if count:
                    if a and b:
                        entries[cv, cbar] += a * b
                    continue
                # weight of sat(F, tau1 + tau2) minus cbar, from the child scores
                score = (weigh(cv)
                         + a.score - weigh(s1) + weigh(s2 & cm_1 & ~cbar)
                         + b.score - weigh(s2) + weigh(s1 & cm_2 & ~cbar))
                if check:
                    tau = a.assignment | b.assignment
                    direct = weigh(_sat_of(formula, tau, d.cuts[v][1]) & ~cbar)
                    if direct != score:
                        raise ConsistencyError(f"node {v}: score {score} != recomputed {direct}")
                old = entries[cv, cbar]
                if old is None or score > old.score:
                    entries[cv, cbar] = MaxEntry(a.assignment | b.assignment, score)
    if not count:
        for key, entry in entries.items():
            if entry is None:
                raise ConsistencyError(f"node {v}: entry {key} was never assigned")
    return DPTable(v, mode, entries), triples


def run_dp(formula: Formula, d: BranchDecomposition, mode: str,
           families: Optional[PSTables] = None, check: bool = False) -> DPRun:
    """Fill every table bottom-up and keep all of them."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if families is None:
        families = compute_ps_tables(formula, d)
    weigh = _Weights(formula)
    tables: List[Optional[DPTable]] = [None] * d.num_nodes
    triples = [0] * d.num_nodes
    for v in d.postorder:
        ch = d.children[v]
        if not ch:
            tables[v] = leaf_table(formula, d, v, families, mode, weigh)
        else:
            tables[v], triples[v] = merge_tables(formula, d, v, tables[ch[0]], tables[ch[1]],
                                                 families, mode, weigh, check)
    return DPRun(tables, families, triples)


def _prepare(formula, d):
    if d is None:
        if not formula_elements(formula):
            return None
        d = auto_decomposition(formula)
    return d.validate(formula)


def count_models(formula: Formula, d: Optional[BranchDecomposition] = None,
                 all_vars: bool = False, check: bool = False) -> int:
    """Number of assignments of var(F) satisfying every clause.

    With ``all_vars`` the count ranges over all declared variables instead.
    Variables of the decomposition that occur in no clause are divided out.
    """
    d = _prepare(formula, d)
    free = formula.num_vars - len(formula.variables) if all_vars else 0
    if any(len(c) == 0 for c in formula.clauses):
        return 0
    if d is None:
        return 1 << free
    run = run_dp(formula, d, "count", check=check)
    total = run.tables[d.root].entries[0, 0]
    return (total >> len(d.variables - formula.variables)) << free


def max_sat(formula: Formula, d: Optional[BranchDecomposition] = None,
            check: bool = False) -> MaxSatResult:
    """Maximum total weight of satisfied clauses and an assignment reaching it.

    The witness covers all declared variables; those outside the
    decomposition are set to 0.
    """
    d = _prepare(formula, d)
    domain = range(1, formula.num_vars + 1)
    if d is None:
        return MaxSatResult(0, Assignment.from_mask(domain, 0))
    run = run_dp(formula, d, "maxsat", check=check)
    entry = run.tables[d.root].entries[0, 0]
    return MaxSatResult(entry.score, Assignment.from_mask(domain, entry.assignment))


def solve(formula: Formula, d: Optional[BranchDecomposition] = None, mode: str = "count",
          all_vars: bool = False, check: bool = False):
    if mode == "count":
        return count_models(formula, d, all_vars=all_vars, check=check)
    if mode == "maxsat":
        return max_sat(formula, d, check=check)
    raise ValueError(f"mode must be one of {MODES}")
