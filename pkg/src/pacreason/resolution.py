"""Clauses, treelike resolution proofs and bounded clause-space proof search.

Literals are signed integers (+v / -v), clauses are frozensets of literals.
A clause holding a complementary pair canonicalizes to the distinguished
TAUTOLOGY constant, which stands for the always-true axiom clause without
materializing all 2n literals.

Treelike proofs are trees of Leaf / Weaken / Cut nodes, each annotated with
the clause it derives.  Clause space follows the pebbling recurrence: a leaf
costs 1; a cut over subtrees of equal space s costs s+1, over unequal spaces
the maximum; unary weakening steps are free.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import InputError
from .formulas import (
    FALSE,
    Formula,
    PartialAssignment,
    TRUE,
    disjunction,
    literal as literal_formula,
)


class _Tautology:
    """Singleton stand-in for the clause containing all literals."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "TAUTOLOGY"


TAUTOLOGY = _Tautology()

Clause = Union[frozenset, _Tautology]


def make_clause(literals) -> Clause:
    """Canonical clause: dedup literals; complementary pairs give TAUTOLOGY."""
    lits = frozenset(literals)
    for lit in lits:
        if lit == 0:
            raise InputError("0 is not a literal")
        if -lit in lits:
            return TAUTOLOGY
    return lits


def clause_superset(big: Clause, small: Clause) -> bool:
    if big is TAUTOLOGY:
        return True
    if small is TAUTOLOGY:
        return False
    return small <= big


def clause_to_formula(clause: Clause) -> Formula:
    if clause is TAUTOLOGY:
        return TRUE
    if not clause:
        return FALSE
    return disjunction(
        literal_formula(abs(lit), lit > 0) for lit in sorted(clause, key=abs)
    )


class Cnf:
    """A deduplicated list of clauses over variables 1..n."""

    __slots__ = ("clauses", "n")

    def __init__(self, clauses, n: int):
        seen = set()
        out = []
        for c in clauses:
            c = c if c is TAUTOLOGY else make_clause(c)
            if c is not TAUTOLOGY:
                for lit in c:
                    if abs(lit) > n:
                        raise InputError(f"literal {lit} out of range for n={n}")
            key = id(TAUTOLOGY) if c is TAUTOLOGY else c
            if key not in seen:
                seen.add(key)
                out.append(c)
        object.__setattr__(self, "clauses", tuple(out))
        object.__setattr__(self, "n", n)

    def __eq__(self, other):
        return isinstance(other, Cnf) and self.n == other.n and self.clauses == other.clauses

    def __repr__(self):
        return f"Cnf(n={self.n}, clauses={list(self.clauses)!r})"

    def __setattr__(self, name, value):
        raise AttributeError("Cnf is immutable")

    def to_formula(self) -> Formula:
        from .formulas import conjunction

        return conjunction(clause_to_formula(c) for c in self.clauses)


@dataclass(frozen=True)
class Leaf:
    clause: Clause


@dataclass(frozen=True)
class Weaken:
    clause: Clause
    child: "ProofNode"


@dataclass(frozen=True)
class Cut:
    pivot: int  # positive literal in left child, negative in right
    left: "ProofNode"
    right: "ProofNode"
    clause: Clause


ProofNode = Union[Leaf, Weaken, Cut]


def check_proof(proof: ProofNode, phi: Cnf, target: Clause) -> bool:
    """Validate every step and that the root derives `target`.

    Leaves must come from `phi` or be the tautology axiom.  Cuts require both
    premises to carry the pivot with opposite signs; the tautology clause may
    not feed a cut.  Malformed proofs return False rather than raising.
    """
    inputs = set(c for c in phi.clauses if c is not TAUTOLOGY)

    def valid(node) -> bool:
        if isinstance(node, Leaf):
            return node.clause is TAUTOLOGY or node.clause in inputs
        if isinstance(node, Weaken):
            return valid(node.child) and clause_superset(node.clause, node.child.clause)
        if isinstance(node, Cut):
            lc, rc = node.left.clause, node.right.clause
            if lc is TAUTOLOGY or rc is TAUTOLOGY:
                return False
            if node.pivot not in lc or -node.pivot not in rc:
                return False
            resolvent = make_clause((lc - {node.pivot}) | (rc - {-node.pivot}))
            if resolvent is TAUTOLOGY:
                same = node.clause is TAUTOLOGY
            else:
                same = node.clause == resolvent
            return same and valid(node.left) and valid(node.right)
        return False

    root_ok = (
        proof.clause is TAUTOLOGY and target is TAUTOLOGY
    ) or proof.clause == target
    return root_ok and valid(proof)


def clause_space(proof: ProofNode) -> int:
    """Optimal blackboard size via the pebbling recurrence."""
    if isinstance(proof, Leaf):
        return 1
    if isinstance(proof, Weaken):
        return clause_space(proof.child)
    left = clause_space(proof.left)
    right = clause_space(proof.right)
    return left + 1 if left == right else max(left, right)


def proof_size(proof: ProofNode) -> int:
    if isinstance(proof, Leaf):
        return 1
    if isinstance(proof, Weaken):
        return 1 + proof_size(proof.child)
    return 1 + proof_size(proof.left) + proof_size(proof.right)


def space_bound_for_size(length: int) -> int:
    """Clause space sufficient for any treelike proof of the given length."""
    if length < 1:
        raise InputError(f"proof length must be at least 1, got {length}")
    return length.bit_length()  # floor(log2 L) + 1


def search_space(phi: Cnf, s: int, target: Clause) -> Optional[ProofNode]:
    """Find a clause-space-at-most-s treelike proof of `target` from `phi`.

    Base case: a target that is a superset of an input clause follows by
    weakening.  Otherwise branch on a literal, proving target-or-literal in
    space s-1 and target-or-negation in space s.  Literals are tried in
    ascending variable order, positive first, so results are reproducible.
    Returns None when no such proof exists.
    """
    if s < 1:
        raise InputError(f"space bound must be at least 1, got {s}")
    if target is TAUTOLOGY:
        return Leaf(TAUTOLOGY)

    inputs = [c for c in phi.clauses if c is not TAUTOLOGY]

    def search(clause: frozenset, space: int) -> Optional[ProofNode]:
        for base in inputs:
            if base <= clause:
                leaf = Leaf(base)
                return leaf if base == clause else Weaken(clause, leaf)
        if space > 1:
            used = {abs(lit) for lit in clause}
            for var in range(1, phi.n + 1):
                if var in used:
                    continue
                for lit in (var, -var):
                    first = search(clause | {lit}, space - 1)
                    if first is None:
                        continue
                    second = search(clause | {-lit}, space)
                    if second is None:
                        return None
                    if lit > 0:
                        return Cut(var, first, second, clause)
                    return Cut(var, second, first, clause)
        return None

    return search(frozenset(target), s)


def restrict_clause(clause: Clause, rho: PartialAssignment) -> Clause:
    """Drop falsified literals; a satisfied literal collapses to TAUTOLOGY."""
    if clause is TAUTOLOGY:
        return TAUTOLOGY
    out = []
    for lit in clause:
        v = rho.value(abs(lit))
        if v is None:
            out.append(lit)
        elif (v == 1) == (lit > 0):
            return TAUTOLOGY
    return frozenset(out)


def restrict_cnf(phi: Cnf, rho: PartialAssignment) -> Cnf:
    """Restrict every clause, dropping the satisfied ones (original indexing kept)."""
    restricted = []
    for c in phi.clauses:
        r = restrict_clause(c, rho)
        if r is not TAUTOLOGY:
            restricted.append(r)
    return Cnf(restricted, phi.n)


def _validate_structure(node: ProofNode) -> None:
    if isinstance(node, Leaf):
        return
    if isinstance(node, Weaken):
        if not clause_superset(node.clause, node.child.clause):
            raise InputError("weakening step does not derive a superset")
        _validate_structure(node.child)
        return
    if isinstance(node, Cut):
        lc, rc = node.left.clause, node.right.clause
        if lc is TAUTOLOGY or rc is TAUTOLOGY:
            raise InputError("cut step uses the tautology clause")
        if node.pivot not in lc or -node.pivot not in rc:
            raise InputError("cut premises do not carry the pivot")
        _validate_structure(node.left)
        _validate_structure(node.right)
        return
    raise InputError(f"not a proof node: {node!r}")


def restrict_proof(proof: ProofNode, rho: PartialAssignment) -> ProofNode:
    """Project a treelike proof under a partial assignment.

    Satisfied clauses become tautology leaves; a cut on an assigned pivot
    becomes (at most) a weakening of the branch whose pivot literal was
    falsified.  The result proves the restricted root from the restricted
    inputs, is no longer than the input, and its clause space does not grow.
    """
    _validate_structure(proof)

    def walk(node: ProofNode) -> ProofNode:
        derived = restrict_clause(node.clause, rho)
        if derived is TAUTOLOGY:
            return Leaf(TAUTOLOGY)
        if isinstance(node, Leaf):
            return Leaf(derived)
        if isinstance(node, Weaken):
            sub = walk(node.child)
            return sub if sub.clause == derived else Weaken(derived, sub)
        v = rho.value(node.pivot)
        if v is None:
            return Cut(node.pivot, walk(node.left), walk(node.right), derived)
        # assigned pivot: keep the branch whose pivot literal is falsified
        sub = walk(node.right if v == 1 else node.left)
        return sub if sub.clause == derived else Weaken(derived, sub)

    return walk(proof)


def clause_to_text(clause: Clause) -> str:
    if clause is TAUTOLOGY:
        return "T"
    if not clause:
        return "()"
    return "|".join(
        f"x{lit}" if lit > 0 else f"-x{-lit}" for lit in sorted(clause, key=lambda l: (abs(l), l < 0))
    )


def proof_to_text(proof: ProofNode) -> str:
    """Nested-parenthesis trace of a proof, usable for golden tests."""
    if isinstance(proof, Leaf):
        return f"(leaf {clause_to_text(proof.clause)})"
    if isinstance(proof, Weaken):
        return f"(weaken {clause_to_text(proof.clause)} {proof_to_text(proof.child)})"
    return (
        f"(cut x{proof.pivot} {proof_to_text(proof.left)} "
        f"{proof_to_text(proof.right)} {clause_to_text(proof.clause)})"
    )
