"""Integer linear inequalities over Boolean variables and bounded
cutting-planes proof search.

An inequality says sum(c_i * x_i) >= b with nonzero integer coefficients.
Sparsity counts the variables; the l1-norm is |b| plus the coefficient
magnitudes.  The proof rules are addition, multiplication by a positive
integer, ceiling division by a common divisor of the coefficients, plus the
Boolean axioms x >= 0, -x >= -1 and the truth axiom 0 >= -1.  A weakening
step (adding an inequality that holds under the fully masked assignment)
exists for trace checking but is never needed by the search, where repeated
axiom additions simulate it.

decide_cp runs the w-sparse L-bounded dynamic program: the table of in-budget
inequalities grows one derivation round at a time; hypotheses beyond the
budget still feed addition steps.  Multiplication factors range over positive
integers only (negative factors would flip the inequality unsoundly).
Accepted runs return a replayable trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import InputError, RuleError
from .formulas import Const, Formula, PartialAssignment, TRUE, Threshold, Var


class LinIneq:
    """Canonical inequality sum(c_i x_i) >= bound; coefficients sorted by var."""

    __slots__ = ("coeffs", "bound")

    def __init__(self, coeffs, bound: int):
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        data = {}
        for var, c in items:
            var = int(var)
            c = int(c)
            if var < 1:
                raise InputError(f"variable index must be >= 1, got {var}")
            if c == 0:
                continue
            data[var] = data.get(var, 0) + c
        object.__setattr__(
            self, "coeffs", tuple(sorted((v, c) for v, c in data.items() if c != 0))
        )
        object.__setattr__(self, "bound", int(bound))

    @property
    def sparsity(self) -> int:
        return len(self.coeffs)

    @property
    def l1_norm(self) -> int:
        return abs(self.bound) + sum(abs(c) for _, c in self.coeffs)

    def coeff(self, var: int) -> int:
        for v, c in self.coeffs:
            if v == var:
                return c
        return 0

    def variables(self) -> frozenset:
        return frozenset(v for v, _ in self.coeffs)

    def holds_at(self, x) -> bool:
        return sum(c * x[v - 1] for v, c in self.coeffs) >= self.bound

    def to_formula(self) -> Formula:
        if not self.coeffs:
            return TRUE if self.bound <= 0 else Const(False)
        return Threshold(
            tuple(c for _, c in self.coeffs),
            tuple(Var(v) for v, _ in self.coeffs),
            self.bound,
        )

    def __eq__(self, other):
        return (
            isinstance(other, LinIneq)
            and self.coeffs == other.coeffs
            and self.bound == other.bound
        )

    def __hash__(self):
        return hash((self.coeffs, self.bound))

    def __repr__(self):
        lhs = " + ".join(f"{c}*x{v}" for v, c in self.coeffs) or "0"
        return f"LinIneq({lhs} >= {self.bound})"

    def __setattr__(self, name, value):
        raise AttributeError("LinIneq is immutable")


TRUTH_AXIOM = LinIneq((), -1)  # 0 >= -1


def var_nonneg(var: int) -> LinIneq:
    return LinIneq(((var, 1),), 0)


def var_at_most_one(var: int) -> LinIneq:
    return LinIneq(((var, -1),), -1)


def is_axiom(ineq: LinIneq) -> bool:
    if ineq == TRUTH_AXIOM:
        return True
    if len(ineq.coeffs) != 1:
        return False
    (var, c), = ineq.coeffs
    return (c == 1 and ineq.bound == 0) or (c == -1 and ineq.bound == -1)


def add_ineqs(a: LinIneq, b: LinIneq) -> LinIneq:
    return LinIneq(tuple(a.coeffs) + tuple(b.coeffs), a.bound + b.bound)


def multiply_ineq(a: LinIneq, factor: int) -> LinIneq:
    if factor < 1:
        raise RuleError(f"multiplication factor must be a positive integer, got {factor}")
    return LinIneq(((v, c * factor) for v, c in a.coeffs), a.bound * factor)


def divide_ineq(a: LinIneq, divisor: int) -> LinIneq:
    if divisor < 1:
        raise RuleError(f"divisor must be a positive integer, got {divisor}")
    if any(c % divisor for _, c in a.coeffs):
        raise RuleError(f"{divisor} does not divide every coefficient of {a!r}")
    return LinIneq(((v, c // divisor) for v, c in a.coeffs), -((-a.bound) // divisor))


def always_witnessed_true(ineq: LinIneq) -> bool:
    """Witnessed true even under the fully masked assignment."""
    return sum(min(0, c) for _, c in ineq.coeffs) >= ineq.bound


def weaken_ineq(base: LinIneq, addend: LinIneq) -> LinIneq:
    if not always_witnessed_true(addend):
        raise RuleError(f"{addend!r} is not witnessed true under full masking")
    return add_ineqs(base, addend)


@dataclass(frozen=True)
class AxiomStep:
    conclusion: LinIneq


@dataclass(frozen=True)
class HypothesisStep:
    index: int
    conclusion: LinIneq


@dataclass(frozen=True)
class AddStep:
    left: int  # indices of earlier steps
    right: int
    conclusion: LinIneq


@dataclass(frozen=True)
class MultiplyStep:
    source: int
    factor: int
    conclusion: LinIneq


@dataclass(frozen=True)
class DivideStep:
    source: int
    divisor: int
    conclusion: LinIneq


@dataclass(frozen=True)
class WeakenStep:
    source: int
    addend: LinIneq
    conclusion: LinIneq


CpStep = Union[AxiomStep, HypothesisStep, AddStep, MultiplyStep, DivideStep, WeakenStep]


def apply_rule(step: CpStep, premises) -> LinIneq:
    """Recompute a step's conclusion from its resolved premise inequalities."""
    if isinstance(step, AxiomStep):
        if not is_axiom(step.conclusion):
            raise RuleError(f"{step.conclusion!r} is not an axiom")
        return step.conclusion
    if isinstance(step, HypothesisStep):
        return step.conclusion
    if isinstance(step, AddStep):
        return add_ineqs(premises[0], premises[1])
    if isinstance(step, MultiplyStep):
        return multiply_ineq(premises[0], step.factor)
    if isinstance(step, DivideStep):
        return divide_ineq(premises[0], step.divisor)
    if isinstance(step, WeakenStep):
        return weaken_ineq(premises[0], step.addend)
    raise RuleError(f"unknown step type: {step!r}")


def _premise_indices(step: CpStep):
    if isinstance(step, AddStep):
        return (step.left, step.right)
    if isinstance(step, (MultiplyStep, DivideStep, WeakenStep)):
        return (step.source,)
    return ()


def check_trace(trace, hyps, target: LinIneq, w: Optional[int] = None,
                L: Optional[int] = None) -> bool:
    """Replay every step; derived conclusions must respect the budgets when
    given (hypothesis steps are inputs and are exempt)."""
    hyps = list(hyps)
    derived = []
    for step in trace:
        for i in _premise_indices(step):
            if not 0 <= i < len(derived):
                return False
        premises = [derived[i] for i in _premise_indices(step)]
        if isinstance(step, HypothesisStep):
            if not (0 <= step.index < len(hyps)) or hyps[step.index] != step.conclusion:
                return False
        else:
            try:
                if apply_rule(step, premises) != step.conclusion:
                    return False
            except RuleError:
                return False
            if w is not None and step.conclusion.sparsity > w:
                return False
            if L is not None and step.conclusion.l1_norm > L:
                return False
        derived.append(step.conclusion)
    return bool(derived) and derived[-1] == target


def decide_cp(hyps, target: LinIneq, w: int, L: int, stats: Optional[dict] = None):
    """Accept iff `target` has a w-sparse L-bounded derivation from `hyps`
    and the axioms.  Returns (accepted, trace)."""
    hyps = list(hyps)
    if target.sparsity > w:
        raise InputError(f"target sparsity {target.sparsity} exceeds the bound {w}")
    if target.l1_norm > L:
        raise InputError(f"target l1-norm {target.l1_norm} exceeds the bound {L}")

    variables = sorted(
        set().union(target.variables(), *(h.variables() for h in hyps))
    )

    table = {}

    def in_budget(ineq: LinIneq) -> bool:
        return ineq.sparsity <= w and ineq.l1_norm <= L

    axioms = [TRUTH_AXIOM]
    for v in variables:
        axioms.extend((var_nonneg(v), var_at_most_one(v)))
    for ax in axioms:
        if in_budget(ax) and ax not in table:
            table[ax] = ("axiom",)
    if is_axiom(target):
        return True, (AxiomStep(target),)

    for i, h in enumerate(hyps):
        if in_budget(h) and h not in table:
            table[h] = ("hypothesis", i)

    def build_trace():
        steps = []
        index_of = {}

        def visit(ineq: LinIneq) -> int:
            if ineq in index_of:
                return index_of[ineq]
            prov = table.get(ineq)
            if prov is None:  # out-of-budget hypothesis used as an addition input
                step = HypothesisStep(hyps.index(ineq), ineq)
            elif prov[0] == "axiom":
                step = AxiomStep(ineq)
            elif prov[0] == "hypothesis":
                step = HypothesisStep(prov[1], ineq)
            elif prov[0] == "add":
                step = AddStep(visit(prov[1]), visit(prov[2]), ineq)
            elif prov[0] == "mul":
                step = MultiplyStep(visit(prov[1]), prov[2], ineq)
            else:
                step = DivideStep(visit(prov[1]), prov[2], ineq)
            index_of[ineq] = len(steps)
            steps.append(step)
            return index_of[ineq]

        visit(target)
        return tuple(steps)

    if target in table:
        return True, build_trace()

    if stats is not None:
        stats["table_sizes"] = [len(table)]

    delta = set(table)
    first_round = True
    while True:
        new = {}

        def offer(ineq, prov):
            if in_budget(ineq) and ineq not in table and ineq not in new:
                new[ineq] = prov

        add_sources = list(table) + [h for h in hyps if h not in table]
        for a in add_sources:
            for b in add_sources:
                if not first_round and a not in delta and b not in delta:
                    continue
                offer(add_ineqs(a, b), ("add", a, b))

        for ineq in table:
            if not first_round and ineq not in delta:
                continue
            for factor in range(2, L + 1):
                offer(multiply_ineq(ineq, factor), ("mul", ineq, factor))
            for divisor in range(2, L + 1):
                if all(c % divisor == 0 for _, c in ineq.coeffs):
                    offer(divide_ineq(ineq, divisor), ("div", ineq, divisor))

        if not new:
            return False, None
        table.update(new)
        if stats is not None:
            stats["table_sizes"].append(len(table))
        if target in table:
            return True, build_trace()
        delta = set(new)
        first_round = False


def restrict_ineq(ineq: LinIneq, rho: PartialAssignment) -> Union[LinIneq, Const]:
    """Variables set to 1 move into the bound, variables set to 0 vanish;
    collapses to Const(True) when witnessed true."""
    fixed = 0
    kept = []
    slack = 0
    for v, c in ineq.coeffs:
        value = rho.value(v)
        if value is None:
            kept.append((v, c))
            slack += min(0, c)
        elif value == 1:
            fixed += c
    if fixed + slack >= ineq.bound:
        return TRUE
    return LinIneq(kept, ineq.bound - fixed)


def encode_clause_cp(clause) -> LinIneq:
    """A clause as the inequality: +1 per positive literal, -1 per negative,
    bound 1 minus the number of negative literals."""
    from .resolution import TAUTOLOGY

    if clause is TAUTOLOGY:
        raise InputError("the tautology clause has no inequality encoding")
    negatives = sum(1 for lit in clause if lit < 0)
    return LinIneq(((abs(lit), 1 if lit > 0 else -1) for lit in clause), 1 - negatives)
