"""Limited-decision backends adapting each proof system to the reduction.

Every backend is restriction-closed: whenever it accepts an instance it also
accepts any restriction of that instance at the same budget, which is what
makes the per-example aggregation sound.
"""

from __future__ import annotations

from .formulas import Const, TRUE, restrict as restrict_formula
from .oracle import ENUMERATION_CAP, entails
from .polycalc import PC, decide_pc, restrict_polynomial
from .cutting_planes import decide_cp, restrict_ineq
from .res_k import BOTTOM, decide_resk_width, restrict_kdnf
from .resolution import TAUTOLOGY, restrict_clause, restrict_cnf, search_space


class SpaceResolutionBackend:
    """Clause-space-bounded treelike resolution; query is a single clause."""

    def __init__(self, s: int, n: int):
        self.s = s
        self.n = n

    def decide(self, query, hyps) -> bool:
        if query is TAUTOLOGY:
            return True  # the tautology clause is an axiom
        return search_space(hyps, self.s, query) is not None

    def restrict_query(self, query, rho):
        return restrict_clause(query, rho)

    def restrict_hyps(self, hyps, rho):
        return restrict_cnf(hyps, rho)


class ResKWidthBackend:
    """Width-bounded RES(k) refutation; the query arrives pre-negated as a
    list of k-DNFs that join the hypotheses for a bottom-target run."""

    def __init__(self, k: int, w: int, n: int):
        self.k = k
        self.w = w
        self.n = n

    def decide(self, query, hyps) -> bool:
        accepted, _ = decide_resk_width(list(hyps) + list(query), BOTTOM, self.k, self.w)
        return accepted

    def restrict_query(self, query, rho):
        restricted = (restrict_kdnf(phi, rho) for phi in query)
        return tuple(phi for phi in restricted if phi != TRUE)

    def restrict_hyps(self, hyps, rho):
        restricted = (restrict_kdnf(phi, rho) for phi in hyps)
        return tuple(phi for phi in restricted if phi != TRUE)


class PolynomialCalculusBackend:
    """Degree-bounded polynomial calculus (or PCR); query is a polynomial."""

    def __init__(self, d: int, n: int, mode: str = PC):
        self.d = d
        self.n = n
        self.mode = mode

    def decide(self, query, hyps) -> bool:
        return decide_pc(list(hyps), query, self.d, self.mode)

    def restrict_query(self, query, rho):
        return restrict_polynomial(query, rho)

    def restrict_hyps(self, hyps, rho):
        return tuple(restrict_polynomial(p, rho) for p in hyps)


class CuttingPlanesBackend:
    """Sparse, l1-bounded cutting planes; query is a linear inequality."""

    def __init__(self, w: int, L: int, n: int):
        self.w = w
        self.L = L
        self.n = n

    def decide(self, query, hyps) -> bool:
        if query == TRUE:
            return True
        accepted, _ = decide_cp(list(hyps), query, self.w, self.L)
        return accepted

    def restrict_query(self, query, rho):
        return restrict_ineq(query, rho)

    def restrict_hyps(self, hyps, rho):
        restricted = (restrict_ineq(phi, rho) for phi in hyps)
        return tuple(phi for phi in restricted if phi != TRUE)


class EntailmentOracleBackend:
    """Brute-force classical entailment over threshold-basis formulas."""

    def __init__(self, n: int, cap: int = ENUMERATION_CAP):
        self.n = n
        self.cap = cap

    def decide(self, query, hyps) -> bool:
        return entails(list(hyps), query, self.n, cap=self.cap)

    def restrict_query(self, query, rho):
        return restrict_formula(query, rho)

    def restrict_hyps(self, hyps, rho):
        restricted = (restrict_formula(phi, rho) for phi in hyps)
        return tuple(phi for phi in restricted if phi != Const(True))
