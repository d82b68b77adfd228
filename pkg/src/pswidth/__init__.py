"""Exact #SAT and weighted MaxSAT parameterized by the ps-width of a branch decomposition."""

__version__ = "0.1.0"

from .decomposition import (BranchDecomposition, Cut, Element, auto_decomposition, cla, cut_of,
                            cut_subformulas, emit_decomposition, linear_decomposition,
                            parse_decomposition, parse_ordering, var)
from .dp import count_models, max_sat, run_dp, solve
from .errors import (ConsistencyError, DecompositionError, GuardError, ParseError,
                     PSWidthError)
from .formula import (Assignment, Clause, Formula, Literal, induce_clause, induce_formula,
                      parse_cnf, parse_wcnf, satisfied_clauses, weight_of)
from .interval import (find_interval_ordering, max_induced_matching_size, mim_of_decomposition,
                       order_to_decomposition, verify_interval_ordering)
from .oracle import brute_count, brute_maxsat, brute_ps
from .ps import compute_ps_tables, ps_width

__all__ = [
    "Assignment", "auto_decomposition", "BranchDecomposition", "brute_count",
    "brute_maxsat", "brute_ps", "cla", "Clause", "compute_ps_tables", "ConsistencyError",
    "count_models", "Cut", "cut_of", "cut_subformulas", "DecompositionError", "Element",
    "emit_decomposition", "find_interval_ordering", "Formula", "GuardError",
    "induce_clause", "induce_formula", "linear_decomposition", "Literal",
    "max_induced_matching_size", "max_sat", "mim_of_decomposition",
    "order_to_decomposition", "parse_cnf", "parse_decomposition", "parse_ordering",
    "parse_wcnf", "ParseError", "ps_width", "PSWidthError", "run_dp", "satisfied_clauses",
    "solve", "var", "verify_interval_ordering", "weight_of",
]
