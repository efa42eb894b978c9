"""k-DNF formulas and width-bounded RES(k) proof search.

A k-DNF is a set of terms (conjunctions of at most k literals, stored as
frozensets of signed integers); its width is the number of terms, and the
empty k-DNF is the unsatisfiable bottom formula.  The proof system derives
k-DNFs by weakening, cut, and-introduction and and-elimination.

decide_resk_width runs the width-w dynamic program: a table over canonical
width-at-most-w k-DNFs grows monotonically, one derivation round at a time,
until the target appears or no rule yields anything new.  Hypotheses wider
than w never enter the table but may feed cut steps.  Accepted runs return a
derivation trace that an independent checker can replay rule by rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Union

from .errors import InputError
from .formulas import (
    Const,
    Formula,
    FALSE,
    PartialAssignment,
    TRUE,
    conjunction,
    disjunction,
    literal as literal_formula,
)


def make_term(literals) -> frozenset:
    lits = frozenset(literals)
    if not lits:
        raise InputError("terms need at least one literal")
    for lit in lits:
        if lit == 0:
            raise InputError("0 is not a literal")
        if -lit in lits:
            raise InputError(f"term contains the complementary pair x{abs(lit)}")
    return lits


class KDnf:
    """Canonical disjunction of conjunctions of literals."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        object.__setattr__(self, "terms", frozenset(make_term(t) for t in terms))

    @property
    def width(self) -> int:
        return len(self.terms)

    @property
    def max_term_size(self) -> int:
        return max((len(t) for t in self.terms), default=0)

    def variables(self) -> frozenset:
        return frozenset(abs(lit) for t in self.terms for lit in t)

    def __eq__(self, other):
        return isinstance(other, KDnf) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        return f"KDnf({sorted(sorted(t, key=abs) for t in self.terms)!r})"

    def __setattr__(self, name, value):
        raise AttributeError("KDnf is immutable")


BOTTOM = KDnf(())


def kdnf_to_formula(phi: KDnf) -> Formula:
    if not phi.terms:
        return FALSE
    return disjunction(
        conjunction(literal_formula(abs(lit), lit > 0) for lit in sorted(t, key=abs))
        for t in sorted(phi.terms, key=lambda t: sorted(t, key=abs))
    )


def restrict_kdnf(phi: KDnf, rho: PartialAssignment) -> Union[KDnf, Const]:
    """Drop falsified terms, strip satisfied literals; may collapse to true.

    A fully satisfied term makes the whole disjunction true.  The all-literals
    encoding of the constant 1 also collapses to Const(True).
    """
    new_terms = set()
    for term in phi.terms:
        kept = []
        falsified = False
        for lit in term:
            v = rho.value(abs(lit))
            if v is None:
                kept.append(lit)
            elif (v == 1) != (lit > 0):
                falsified = True
                break
        if falsified:
            continue
        if not kept:
            return TRUE
        new_terms.add(frozenset(kept))
    masked = rho.masked_vars()
    if masked and new_terms == {frozenset({s * v}) for v in masked for s in (1, -1)}:
        return TRUE
    return KDnf(new_terms)


def negate_query(query, k: int):
    """De Morgan dual of a disjunction of k-CNFs, one k-DNF per disjunct.

    Each clause negates to a term, so every clause must have at most k
    literals.  A disjunct containing the empty clause negates to Const(True).
    """
    from .resolution import TAUTOLOGY

    out = []
    for kcnf in query:
        terms = []
        trivially_true = False
        for clause in kcnf:
            if clause is TAUTOLOGY:
                continue  # negates to a falsified disjunct, which drops
            clause = frozenset(clause)
            if not clause:
                trivially_true = True
                break
            if len(clause) > k:
                raise InputError(
                    f"clause with {len(clause)} literals cannot be negated into a {k}-DNF"
                )
            terms.append(frozenset(-lit for lit in clause))
        out.append(TRUE if trivially_true else KDnf(terms))
    return out


@dataclass(frozen=True)
class TraceStep:
    formula: KDnf
    rule: str  # hypothesis | weakening | cut | and_elim | and_intro
    premises: tuple  # hypothesis index, or earlier formulas


def _cut_results(psi1: KDnf, psi2: KDnf, w: int):
    """All width-w cuts with psi1 supplying the conjunction."""
    for term in psi1.terms:
        negs = frozenset(frozenset((-lit,)) for lit in term)
        if negs <= psi2.terms:
            rest = (psi1.terms - {term}) | (psi2.terms - negs)
            if len(rest) <= w:
                yield KDnf(rest)


def _elim_results(psi: KDnf):
    for term in psi.terms:
        if len(term) < 2:
            continue
        for lit in term:
            yield KDnf((psi.terms - {term}) | {frozenset((lit,))})


def _weaken_results(psi: KDnf, universe_terms, w: int):
    extra = [t for t in universe_terms if t not in psi.terms]
    for count in range(1, w - psi.width + 1):
        for combo in combinations(extra, count):
            yield KDnf(psi.terms | set(combo))


def _term_universe(variables, k: int):
    literals = sorted(
        (s * v for v in variables for s in (1, -1)), key=lambda l: (abs(l), l < 0)
    )
    universe = []
    for size in range(1, k + 1):
        for combo in combinations(literals, size):
            if any(-lit in combo for lit in combo):
                continue
            universe.append(frozenset(combo))
    return universe


def decide_resk_width(hyps, target: KDnf, k: int, w: int, stats: Optional[dict] = None):
    """Accept iff a width-w RES(k) proof of `target` from `hyps` exists.

    Returns (accepted, trace).  The table holds every derived k-DNF of width
    at most w; each round derives all one-step consequences of the current
    table (plus hypotheses as cut inputs), so the table only gains entries and
    reaches a fixpoint.  New entries remember their rule and premises, and an
    accepting run is unwound into a TraceStep list ending at the target.
    When given, `stats` records the table size after every round.
    """
    hyps = list(hyps)
    if target.width > w:
        raise InputError(f"target width {target.width} exceeds the bound {w}")
    for phi in hyps + [target]:
        if phi.max_term_size > k:
            raise InputError(f"formula {phi!r} is not a {k}-DNF")

    variables = sorted(set().union(*(phi.variables() for phi in hyps + [target])))
    universe_terms = _term_universe(variables, k)

    table = {}
    for i, phi in enumerate(hyps):
        if phi.width <= w and phi not in table:
            table[phi] = ("hypothesis", i)

    def build_trace() -> tuple:
        steps = []
        emitted = set()

        def visit(f: KDnf):
            if f in emitted:
                return
            emitted.add(f)
            prov = table.get(f)
            if prov is None:  # wide hypothesis used as a cut input
                steps.append(TraceStep(f, "hypothesis", (hyps.index(f),)))
                return
            rule = prov[0]
            if rule == "hypothesis":
                steps.append(TraceStep(f, "hypothesis", (prov[1],)))
                return
            for premise in prov[1:]:
                visit(premise)
            steps.append(TraceStep(f, rule, tuple(prov[1:])))

        visit(target)
        return tuple(steps)

    if stats is not None:
        stats["table_sizes"] = [len(table)]
    if target in table:
        return True, build_trace()

    delta = set(table)
    first_round = True
    while True:
        new = {}

        def offer(formula, prov):
            if formula not in table and formula not in new:
                new[formula] = prov

        for psi in delta:
            for result in _weaken_results(psi, universe_terms, w):
                offer(result, ("weakening", psi))
            for result in _elim_results(psi):
                offer(result, ("and_elim", psi))

        cut_sources = list(table) + [h for h in hyps if h not in table]
        for psi1 in cut_sources:
            for psi2 in cut_sources:
                if not first_round and psi1 not in delta and psi2 not in delta:
                    continue
                for result in _cut_results(psi1, psi2, w):
                    offer(result, ("cut", psi1, psi2))

        # and-introduction: group table entries psi = A or literal by shared A
        groups = {}
        for psi in table:
            for term in psi.terms:
                if len(term) == 1:
                    rest = psi.terms - {term}
                    groups.setdefault(rest, set()).add(next(iter(term)))
        for rest, lits in groups.items():
            if len(rest) + 1 > w:
                continue
            available = sorted(lits, key=lambda l: (abs(l), l < 0))
            for j in range(2, k + 1):
                for combo in combinations(available, j):
                    if any(-lit in combo for lit in combo):
                        continue
                    premises = tuple(KDnf(rest | {frozenset((lit,))}) for lit in combo)
                    if not first_round and all(p not in delta for p in premises):
                        continue
                    offer(KDnf(rest | {frozenset(combo)}), ("and_intro",) + premises)

        if not new:
            return False, None
        table.update(new)
        if stats is not None:
            stats["table_sizes"].append(len(table))
        if target in table:
            return True, build_trace()
        delta = set(new)
        first_round = False


def check_trace(trace, hyps, target: KDnf, k: int, w: int) -> bool:
    """Replay a derivation trace rule by rule, independently of the search."""
    hyps = list(hyps)
    derived = set()
    for step in trace:
        f = step.formula
        if f.max_term_size > k:
            return False
        if step.rule == "hypothesis":
            (index,) = step.premises
            if not (0 <= index < len(hyps)) or hyps[index] != f:
                return False
            derived.add(f)
            continue
        if f.width > w:
            return False
        if any(p not in derived for p in step.premises):
            return False
        if step.rule == "weakening":
            (p,) = step.premises
            ok = p.terms <= f.terms
        elif step.rule == "and_elim":
            (p,) = step.premises
            ok = any(
                f == KDnf((p.terms - {term}) | {frozenset((lit,))})
                for term in p.terms
                for lit in term
            )
        elif step.rule == "cut":
            p1, p2 = step.premises
            ok = any(f == r for r in _cut_results(p1, p2, f.width)) or any(
                f == r for r in _cut_results(p2, p1, f.width)
            )
        elif step.rule == "and_intro":
            ok = False
            for term in f.terms:
                if not 1 <= len(term) <= k:
                    continue
                rest = f.terms - {term}
                expected = frozenset(
                    KDnf(rest | {frozenset((lit,))}) for lit in term
                )
                if expected == frozenset(step.premises):
                    ok = True
                    break
        else:
            return False
        if not ok:
            return False
        derived.add(f)
    return bool(trace) and trace[-1].formula == target
