"""Brute-force references: enumerate every assignment of var(F)."""

from .errors import GuardError
from .formula import Formula, weight_of

MAX_ENUM_VARS = 20


def all_sat_sets(formula: Formula, limit: int = MAX_ENUM_VARS) -> list:
    """sat(F, tau) for every assignment tau of var(F), one entry per assignment.

    The list is built by doubling: for each variable every partial outcome
    is extended once with the variable false and once with it true.
    """
    xs = sorted(formula.variables)
    if len(xs) > limit:
        raise GuardError(f"refusing to enumerate 2^{len(xs)} assignments (limit {limit} variables)")
    sats = [0]
    for x in xs:
        f, t = formula.sat_mask(x, 0), formula.sat_mask(x, 1)
        sats = [s | f for s in sats] + [s | t for s in sats]
    return sats


def brute_ps(formula: Formula) -> tuple:
    """PS(F) by definition, as a sorted tuple of clause masks."""
    return tuple(sorted(set(all_sat_sets(formula))))


def brute_count(formula: Formula) -> int:
    full = formula.clause_mask
    return sum(1 for s in all_sat_sets(formula) if s == full)


def brute_maxsat(formula: Formula) -> int:
    """Best total weight; the formula's own weights (unit when absent) are used."""
    return max(weight_of(formula, s) for s in set(all_sat_sets(formula)))
