"""CNF / weighted CNF data model, DIMACS parsing and satisfaction primitives.

Clause sets are plain Python ints used as bit masks over clause ids: bit ``j``
is set iff clause ``j`` is a member.  Variable sets and assignments use the
same trick over variable ids (bit ``x`` for variable ``x``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence, Union

from .errors import ParseError

ClauseSet = int
"""Bit mask over global clause ids."""


class Literal(NamedTuple):
    variable: int
    negated: bool = False

    @classmethod
    def from_dimacs(cls, lit: int) -> "Literal":
        if lit == 0:
            raise ValueError("0 is not a literal")
        return cls(abs(lit), lit < 0)

    def to_dimacs(self) -> int:
        return -self.variable if self.negated else self.variable

    def __str__(self):
        return ("-" if self.negated else "") + f"x{self.variable}"


@dataclass(frozen=True)
class Clause:
    id: int
    literals: frozenset

    @classmethod
    def from_dimacs(cls, id: int, lits: Iterable[int]) -> "Clause":
        return cls(id, frozenset(Literal.from_dimacs(l) for l in lits))

    @property
    def variables(self) -> frozenset:
        return frozenset(l.variable for l in self.literals)

    def to_dimacs(self) -> list:
        return sorted((l.to_dimacs() for l in self.literals), key=lambda v: (abs(v), v))

    def __len__(self):
        return len(self.literals)


@dataclass(frozen=True)
class Assignment:
    """Truth assignment over ``domain``; variables in ``ones`` are true."""

    domain: frozenset
    ones: frozenset = frozenset()

    def __post_init__(self):
        if not self.ones <= self.domain:
            raise ValueError("true variables must lie in the domain")

    @classmethod
    def from_dict(cls, values: Mapping[int, int]) -> "Assignment":
        return cls(frozenset(values), frozenset(x for x, b in values.items() if b))

    @classmethod
    def from_mask(cls, domain: Iterable[int], mask: int) -> "Assignment":
        domain = frozenset(domain)
        return cls(domain, frozenset(x for x in domain if mask >> x & 1))

    def __getitem__(self, x: int) -> int:
        if x not in self.domain:
            raise KeyError(x)
        return int(x in self.ones)

    def value(self, lit: Literal) -> Optional[bool]:
        """Truth value of ``lit``, or None when its variable is unassigned."""
        if lit.variable not in self.domain:
            return None
        return (lit.variable in self.ones) != lit.negated

    def restrict(self, variables: Iterable[int]) -> "Assignment":
        dom = self.domain & frozenset(variables)
        return Assignment(dom, self.ones & dom)

    def as_dict(self) -> dict:
        return {x: int(x in self.ones) for x in sorted(self.domain)}


@dataclass(frozen=True)
class Formula:
    """A multiset of clauses.

    ``clauses`` keeps clause ids; a parsed formula has ids ``0..m-1`` in file
    order, an induced subformula keeps the ids of the clauses it came from.
    ``weights`` is aligned with ``clauses`` or None for unit weights.
    """

    clauses: tuple
    num_vars: int
    weights: Optional[tuple] = None

    def __post_init__(self):
        ids = [c.id for c in self.clauses]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate clause ids")
        for c in self.clauses:
            for lit in c.literals:
                if not 1 <= lit.variable <= self.num_vars:
                    raise ValueError(f"variable {lit.variable} out of range in clause c{c.id}")
        if self.weights is not None:
            if len(self.weights) != len(self.clauses):
                raise ValueError("weights must align with clauses")
            if any(w < 0 for w in self.weights):
                raise ValueError("weights must be nonnegative")

    @classmethod
    def from_lists(cls, clauses: Sequence[Iterable[int]], num_vars: Optional[int] = None,
                   weights: Optional[Sequence[int]] = None) -> "Formula":
        """Build a formula from DIMACS-style integer lists, ids in list order."""
        cl = tuple(Clause.from_dimacs(i, lits) for i, lits in enumerate(clauses))
        if num_vars is None:
            num_vars = max((l.variable for c in cl for l in c.literals), default=0)
        return cls(cl, num_vars, None if weights is None else tuple(int(w) for w in weights))

    @property
    def m(self) -> int:
        return len(self.clauses)

    @cached_property
    def clause_ids(self) -> tuple:
        return tuple(c.id for c in self.clauses)

    @cached_property
    def clause_mask(self) -> ClauseSet:
        mask = 0
        for c in self.clauses:
            mask |= 1 << c.id
        return mask

    @cached_property
    def variables(self) -> frozenset:
        """var(F): variables occurring in at least one clause."""
        return frozenset(x for c in self.clauses for x in c.variables)

    @property
    def size(self) -> int:
        return self.m + sum(len(c) for c in self.clauses)

    @cached_property
    def weight_map(self) -> dict:
        if self.weights is None:
            return {c.id: 1 for c in self.clauses}
        return dict(zip(self.clause_ids, self.weights))

    @cached_property
    def by_id(self) -> dict:
        return {c.id: c for c in self.clauses}

    @cached_property
    def literal_masks(self) -> dict:
        """variable -> (clauses satisfied by x=0, clauses satisfied by x=1)."""
        masks = {}
        for c in self.clauses:
            for lit in c.literals:
                neg, pos = masks.get(lit.variable, (0, 0))
                if lit.negated:
                    neg |= 1 << c.id
                else:
                    pos |= 1 << c.id
                masks[lit.variable] = (neg, pos)
        return masks

    def sat_mask(self, variable: int, value: int) -> ClauseSet:
        """Clauses of this formula made true by setting one variable."""
        return self.literal_masks.get(variable, (0, 0))[value]

    def to_dimacs(self) -> str:
        if self.weights is None:
            lines = [f"p cnf {self.num_vars} {self.m}"]
            lines += [" ".join(map(str, c.to_dimacs() + [0])) for c in self.clauses]
        else:
            lines = [f"p wcnf {self.num_vars} {self.m}"]
            lines += [" ".join(map(str, [w] + c.to_dimacs() + [0]))
                      for w, c in zip(self.weights, self.clauses)]
        return "\n".join(lines) + "\n"


def _text_lines(text: Union[str, bytes]):
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not ASCII: {exc}") from None
    return text.splitlines()


def _int_token(tok, lineno, what="integer"):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected {what}, got {tok!r}", lineno) from None


def _parse_dimacs(text, weighted):
    fmt = "wcnf" if weighted else "cnf"
    header = None
    rows = []  # (lineno, ints as read, weight first for wcnf)
    for lineno, raw in enumerate(_text_lines(text), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if header is not None:
                raise ParseError("duplicate header", lineno)
            parts = line.split()
            extra_ok = 1 if weighted else 0
            if len(parts) < 4 or len(parts) > 4 + extra_ok or parts[0] != "p" or parts[1] != fmt:
                raise ParseError(f"malformed header {line!r}, expected 'p {fmt} n m'", lineno)
            n = _int_token(parts[2], lineno)
            m = _int_token(parts[3], lineno)
            if n < 0 or m < 0:
                raise ParseError("negative count in header", lineno)
            if len(parts) == 5:
                _int_token(parts[4], lineno, "top weight")
            header = (n, m)
            continue
        if header is None:
            raise ParseError("clause before header", lineno)
        tokens = line.split()
        if tokens[-1] != "0":
            raise ParseError("clause is missing its terminating 0", lineno)
        current = []
        for tok in tokens:
            v = _int_token(tok, lineno)
            if weighted and not current:
                # the leading token of a weighted clause is its weight, which may be 0
                current.append(v)
                continue
            if v == 0:
                rows.append((lineno, current))
                current = []
                continue
            current.append(v)
        if current:
            raise ParseError("clause is missing its terminating 0", lineno)
    if header is None:
        raise ParseError("missing 'p' header")
    n, m = header
    clauses = []
    weights = []
    for i, (lineno, ints) in enumerate(rows):
        if weighted:
            if not ints:
                raise ParseError("weighted clause without a weight", lineno)
            w, ints = ints[0], ints[1:]
            if w < 0:
                raise ParseError(f"negative weight {w}", lineno)
            weights.append(w)
        for v in ints:
            if abs(v) > n:
                raise ParseError(f"literal {v} exceeds declared variable count {n}", lineno)
        clauses.append(Clause.from_dimacs(i, ints))
    if len(clauses) != m:
        raise ParseError(f"header declares {m} clauses but {len(clauses)} were read")
    return Formula(tuple(clauses), n, tuple(weights) if weighted else None)


def parse_cnf(text: Union[str, bytes]) -> Formula:
    """Parse DIMACS CNF text.

    Duplicate literals inside a clause are merged; duplicate clauses are kept
    as distinct clauses.  A weighted-clause line in a CNF file is read as
    literals, so the two formats must not be mixed.
    """
    return _parse_dimacs(text, weighted=False)


def parse_wcnf(text: Union[str, bytes]) -> Formula:
    """Parse DIMACS WCNF text (``p wcnf n m [top]``); the top token is ignored."""
    return _parse_dimacs(text, weighted=True)


def parse_any(text: Union[str, bytes]) -> Formula:
    """Dispatch on the header: ``p wcnf`` goes to parse_wcnf, anything else to parse_cnf."""
    for raw in _text_lines(text):
        parts = raw.split()
        if parts and parts[0] == "p":
            if len(parts) > 1 and parts[1] == "wcnf":
                return parse_wcnf(text)
            break
    return parse_cnf(text)


def induce_clause(clause: Clause, variables: Iterable[int]) -> Clause:
    """The clause restricted to literals over ``variables``; the id is kept."""
    variables = frozenset(variables)
    return Clause(clause.id, frozenset(l for l in clause.literals if l.variable in variables))


def induce_formula(formula: Formula, clause_ids: Iterable[int], variables: Iterable[int]) -> Formula:
    """F_{C,X}: the clauses in ``clause_ids`` induced on ``variables``.

    Clauses keep their original ids and appear in the original order.
    """
    keep = set(clause_ids)
    variables = frozenset(variables)
    unknown = keep - set(formula.clause_ids)
    if unknown:
        raise ValueError(f"unknown clause ids {sorted(unknown)}")
    bad = [x for x in variables if not 1 <= x <= formula.num_vars]
    if bad:
        raise ValueError(f"variables out of range: {sorted(bad)}")
    clauses, weights = [], []
    for i, c in enumerate(formula.clauses):
        if c.id in keep:
            clauses.append(induce_clause(c, variables))
            if formula.weights is not None:
                weights.append(formula.weights[i])
    return Formula(tuple(clauses), formula.num_vars,
                   tuple(weights) if formula.weights is not None else None)


def satisfied_clauses(formula: Formula, assignment: Assignment) -> ClauseSet:
    """sat(F, tau) for a possibly partial assignment.

    A clause counts as satisfied when one of its literals is true under
    ``assignment``; literals over unassigned variables are ignored, so empty
    clauses are never satisfied.
    """
    mask = 0
    for c in formula.clauses:
        if any(assignment.value(l) for l in c.literals):
            mask |= 1 << c.id
    return mask


def weight_of(formula: Formula, clauses: ClauseSet) -> int:
    """Total weight of the clause ids in ``clauses`` (unit weights when unweighted)."""
    wm = formula.weight_map
    total = 0
    while clauses:
        low = clauses & -clauses
        total += wm[low.bit_length() - 1]
        clauses ^= low
    return total


def mask_of(ids: Iterable[int]) -> ClauseSet:
    mask = 0
    for i in ids:
        mask |= 1 << i
    return mask


def ids_of(mask: int) -> list:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out
