"""Branch decompositions of CNF formulas.

A decomposition is a rooted binary tree whose leaves are in bijection with
the clauses and variables of a formula.  Node ids are dense integers and
children are ordered, so every traversal here is deterministic.

The variable leaves must cover var(F) and may additionally include declared
variables that occur in no clause.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence, Tuple

from .errors import DecompositionError, ParseError
from .formula import ClauseSet, Formula, induce_formula


class Element(NamedTuple):
    """A clause (``kind == "c"``, 0-based id) or a variable (``kind == "v"``)."""

    kind: str
    index: int

    def __str__(self):
        return f"{self.kind}{self.index}"

    @property
    def is_clause(self) -> bool:
        return self.kind == "c"

    @classmethod
    def parse(cls, token: str) -> "Element":
        m = re.fullmatch(r"([cv])(\d+)", token)
        if not m:
            raise ValueError(f"bad element token {token!r}, expected v<i> or c<j>")
        return cls(m.group(1), int(m.group(2)))


def var(i: int) -> Element:
    return Element("v", i)


def cla(j: int) -> Element:
    return Element("c", j)


def formula_elements(formula: Formula) -> list:
    """cla(F) and var(F) as elements, clauses first."""
    return [cla(j) for j in formula.clause_ids] + [var(x) for x in sorted(formula.variables)]


def check_element_set(formula: Formula, elements: Sequence[Element], what="elements"):
    """Raise unless ``elements`` lists every clause once and covers var(F).

    Extra variables are allowed when they are declared but unused.
    """
    seen = set()
    dups = []
    for e in elements:
        if e in seen:
            dups.append(str(e))
        seen.add(e)
    problems = []
    if dups:
        problems.append("duplicate " + " ".join(dups))
    ids = set(formula.clause_ids)
    clauses = {e.index for e in seen if e.is_clause}
    variables = {e.index for e in seen if not e.is_clause}
    missing = [str(cla(j)) for j in sorted(ids - clauses)]
    missing += [str(var(x)) for x in sorted(formula.variables - variables)]
    if missing:
        problems.append("missing " + " ".join(missing))
    unknown = [str(cla(j)) for j in sorted(clauses - ids)]
    unknown += [str(var(x)) for x in sorted(variables) if not 1 <= x <= formula.num_vars]
    if unknown:
        problems.append("unknown " + " ".join(unknown))
    if problems:
        raise DecompositionError(f"{what} do not match the formula: " + "; ".join(problems))


class Cut(NamedTuple):
    clause_side: ClauseSet
    var_side: frozenset


@dataclass(frozen=True)
class BranchDecomposition:
    """Rooted binary tree with leaves labelled by formula elements.

    ``children[v]`` is ``()`` for a leaf and ``(left, right)`` otherwise;
    ``leaves`` maps each leaf node to its element.
    """

    children: Tuple[tuple, ...]
    root: int
    leaves: dict

    def __post_init__(self):
        n = len(self.children)
        if not 0 <= self.root < n:
            raise DecompositionError(f"root {self.root} is not a node")
        parent = [None] * n
        for v, ch in enumerate(self.children):
            if len(ch) not in (0, 2):
                raise DecompositionError(f"node {v} has {len(ch)} children, expected 0 or 2")
            if ch and ch[0] == ch[1]:
                raise DecompositionError(f"node {v} lists child {ch[0]} twice")
            for c in ch:
                if not 0 <= c < n:
                    raise DecompositionError(f"node {v} has unknown child {c}")
                if c == self.root:
                    raise DecompositionError(f"node {v} points at the root {c}")
                if parent[c] is not None:
                    raise DecompositionError(f"node {c} has two parents ({parent[c]} and {v})")
                parent[c] = v
        seen = {self.root}
        stack = [self.root]
        while stack:
            for c in self.children[stack.pop()]:
                if c in seen:
                    raise DecompositionError(f"cycle through node {c}")
                seen.add(c)
                stack.append(c)
        if len(seen) != n:
            lost = min(set(range(n)) - seen)
            raise DecompositionError(f"node {lost} is not reachable from the root")
        for v, ch in enumerate(self.children):
            if not ch and v not in self.leaves:
                raise DecompositionError(f"leaf {v} has no element")
            if ch and v in self.leaves:
                raise DecompositionError(f"internal node {v} carries an element")
        for v in self.leaves:
            if not 0 <= v < n:
                raise DecompositionError(f"leaf label on unknown node {v}")
        elems = list(self.leaves.values())
        if len(set(elems)) != len(elems):
            dup = next(e for e in elems if elems.count(e) > 1)
            raise DecompositionError(f"element {dup} labels more than one leaf")
        object.__setattr__(self, "_parent", tuple(parent))

    def __eq__(self, other):
        if not isinstance(other, BranchDecomposition):
            return NotImplemented
        return (self.children, self.root, self.leaves) == (other.children, other.root, other.leaves)

    def __hash__(self):
        return hash((self.children, self.root))

    @property
    def num_nodes(self) -> int:
        return len(self.children)

    def parent(self, v: int) -> Optional[int]:
        return self._parent[v]

    def sibling(self, v: int) -> Optional[int]:
        p = self._parent[v]
        if p is None:
            return None
        a, b = self.children[p]
        return b if a == v else a

    def is_leaf(self, v: int) -> bool:
        return not self.children[v]

    @cached_property
    def elements(self) -> frozenset:
        return frozenset(self.leaves.values())

    @cached_property
    def variables(self) -> frozenset:
        return frozenset(e.index for e in self.elements if not e.is_clause)

    @cached_property
    def bfs_order(self) -> tuple:
        order, queue = [], deque([self.root])
        while queue:
            v = queue.popleft()
            order.append(v)
            queue.extend(self.children[v])
        return tuple(order)

    @cached_property
    def postorder(self) -> tuple:
        """Children before parents; reverse of the BFS order."""
        return tuple(reversed(self.bfs_order))

    @cached_property
    def internal_nodes(self) -> tuple:
        return tuple(v for v in self.bfs_order if self.children[v])

    @cached_property
    def is_linear(self) -> bool:
        """True iff the internal nodes induce a path."""
        for v in self.internal_nodes:
            deg = sum(1 for c in self.children[v] if self.children[c])
            if self._parent[v] is not None:
                deg += 1
            if deg > 2:
                return False
        return True

    @cached_property
    def cuts(self) -> tuple:
        """Per node: (clause mask, variable mask) of delta(v)."""
        cm = [0] * self.num_nodes
        vm = [0] * self.num_nodes
        for v in self.postorder:
            ch = self.children[v]
            if ch:
                cm[v] = cm[ch[0]] | cm[ch[1]]
                vm[v] = vm[ch[0]] | vm[ch[1]]
            else:
                e = self.leaves[v]
                if e.is_clause:
                    cm[v] = 1 << e.index
                else:
                    vm[v] = 1 << e.index
        return tuple(zip(cm, vm))

    def leaf_order(self) -> list:
        """Elements in left-to-right leaf order."""
        out, stack = [], [self.root]
        while stack:
            v = stack.pop()
            if self.children[v]:
                stack.extend(reversed(self.children[v]))
            else:
                out.append(self.leaves[v])
        return out

    def validate(self, formula: Formula) -> "BranchDecomposition":
        """Check the leaf map against ``formula``; returns self for chaining."""
        check_element_set(formula, list(self.leaves.values()), "decomposition leaves")
        return self


def cut_of(d: BranchDecomposition, v: int) -> Cut:
    clauses, vmask = d.cuts[v]
    return Cut(clauses, frozenset(x for x in range(vmask.bit_length()) if vmask >> x & 1))


def cut_subformulas(formula: Formula, cut: Cut) -> Tuple[Formula, Formula]:
    """(F_v, F_vbar) for the cut: outside clauses on inside variables, and vice versa."""
    inside = [j for j in formula.clause_ids if cut.clause_side >> j & 1]
    outside = [j for j in formula.clause_ids if not cut.clause_side >> j & 1]
    other_vars = set(range(1, formula.num_vars + 1)) - cut.var_side
    return (induce_formula(formula, outside, cut.var_side),
            induce_formula(formula, inside, other_vars))


def linear_decomposition(formula: Formula, order: Sequence[Element]) -> BranchDecomposition:
    """Caterpillar whose leaves read ``order`` from left to right.

    Node 0 is the root; internal node ``i`` covers the first ``L - i``
    elements, its left child is the next internal node (or the first leaf)
    and its right child is the leaf of element ``order[L - 1 - i]``.
    """
    order = list(order)
    check_element_set(formula, order, "ordering")
    return _caterpillar(order)


def _caterpillar(order):
    L = len(order)
    if L == 0:
        raise DecompositionError("cannot build a decomposition with no elements")
    if L == 1:
        return BranchDecomposition(((),), 0, {0: order[0]})
    n_internal = L - 1
    leaf_id = {k: n_internal + k for k in range(L)}
    children = []
    for i in range(n_internal):
        left = i + 1 if i < n_internal - 1 else leaf_id[0]
        children.append((left, leaf_id[L - 1 - i]))
    children += [()] * L
    leaves = {leaf_id[k]: order[k] for k in range(L)}
    return BranchDecomposition(tuple(children), 0, leaves)


def file_order(formula: Formula) -> list:
    """Each clause in file order, preceded by its not yet placed variables."""
    placed = set()
    order = []
    for c in formula.clauses:
        for x in sorted(c.variables - placed):
            placed.add(x)
            order.append(var(x))
        order.append(cla(c.id))
    return order


def auto_decomposition(formula: Formula, strategy: str = "greedy-ps") -> BranchDecomposition:
    """Build a linear decomposition when none is supplied.

    ``file-order`` uses :func:`file_order`.  ``greedy-ps`` grows the leaf
    order one element at a time, each time taking the element whose prefix
    cut has the smallest ps-value; it is a heuristic with no width guarantee.
    """
    if strategy == "file-order":
        order = file_order(formula)
    elif strategy == "greedy-ps":
        from .ps import greedy_order
        order = greedy_order(formula)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return linear_decomposition(formula, order)


def parse_decomposition(text, formula: Optional[Formula] = None) -> BranchDecomposition:
    """Read the line-based decomposition format.

    ``nodes N`` and ``root R`` once each, ``edge P C`` per tree edge (child
    order follows line order) and ``leaf L token`` per leaf.  Blank lines
    and lines starting with ``#`` are skipped.
    """
    if isinstance(text, bytes):
        text = text.decode("ascii")
    n = root = None
    kids = {}
    leaves = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        key, args = parts[0], parts[1:]
        try:
            if key == "nodes" and len(args) == 1:
                if n is not None:
                    raise ParseError("duplicate 'nodes' line", lineno)
                n = int(args[0])
                if n < 1:
                    raise ParseError("a decomposition needs at least one node", lineno)
            elif key == "root" and len(args) == 1:
                if root is not None:
                    raise ParseError("duplicate 'root' line", lineno)
                root = int(args[0])
            elif key == "edge" and len(args) == 2:
                p, c = int(args[0]), int(args[1])
                kids.setdefault(p, []).append(c)
            elif key == "leaf" and len(args) == 2:
                v = int(args[0])
                if v in leaves:
                    raise DecompositionError(f"node {v} has two leaf labels")
                leaves[v] = Element.parse(args[1])
            else:
                raise ParseError(f"unknown or malformed line {line!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, (ParseError, DecompositionError)):
                raise
            raise ParseError(str(exc), lineno) from None
    if n is None or root is None:
        raise ParseError("decomposition needs 'nodes' and 'root' lines")
    for v in list(kids) + list(leaves):
        if not 0 <= v < n:
            raise DecompositionError(f"node {v} is outside 0..{n - 1}")
    children = tuple(tuple(kids.get(v, ())) for v in range(n))
    d = BranchDecomposition(children, root, leaves)
    if formula is not None:
        d.validate(formula)
    return d


def emit_decomposition(d: BranchDecomposition) -> str:
    lines = [f"nodes {d.num_nodes}", f"root {d.root}"]
    for v, ch in enumerate(d.children):
        lines += [f"edge {v} {c}" for c in ch]
    lines += [f"leaf {v} {d.leaves[v]}" for v in sorted(d.leaves)]
    return "\n".join(lines) + "\n"


def parse_ordering(text, formula: Optional[Formula] = None) -> list:
    """Whitespace separated ``v<i>`` / ``c<j>`` tokens."""
    if isinstance(text, bytes):
        text = text.decode("ascii")
    order = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        for tok in raw.split("#", 1)[0].split():
            try:
                order.append(Element.parse(tok))
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
    if formula is not None:
        check_element_set(formula, order, "ordering")
    return order


def emit_ordering(order: Iterable[Element]) -> str:
    return " ".join(map(str, order)) + "\n"
