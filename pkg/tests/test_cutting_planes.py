import random
from itertools import product

import pytest

from pacreason.errors import InputError, RuleError
from pacreason.formulas import PartialAssignment, TRUE
from pacreason.cutting_planes import (
    AxiomStep,
    HypothesisStep,
    LinIneq,
    TRUTH_AXIOM,
    add_ineqs,
    check_trace,
    decide_cp,
    divide_ineq,
    encode_clause_cp,
    multiply_ineq,
    restrict_ineq,
    weaken_ineq,
)
from pacreason.resolution import TAUTOLOGY, make_clause


def ineq(coeffs, bound):
    return LinIneq(coeffs, bound)


def pa(text):
    return PartialAssignment.from_string(text)


def test_norms():
    phi = ineq({1: 2, 2: -1}, 1)
    assert phi.sparsity == 2
    assert phi.l1_norm == 4


def test_divide_uses_ceiling():
    assert divide_ineq(ineq({1: 2, 2: 2}, 1), 2) == ineq({1: 1, 2: 1}, 1)
    assert divide_ineq(ineq({1: 2}, -3), 2) == ineq({1: 1}, -1)


def test_divide_rejects_nondivisor():
    with pytest.raises(RuleError):
        divide_ineq(ineq({1: 2, 2: 3}, 1), 2)
    with pytest.raises(RuleError):
        divide_ineq(ineq({1: 2}, 1), 0)


def test_addition_cancels_coefficients():
    assert add_ineqs(ineq({1: 1}, 1), ineq({1: -1}, 0)) == ineq({}, 1)


def test_multiply_scales():
    assert multiply_ineq(ineq({1: 1}, 0), 3) == ineq({1: 3}, 0)
    with pytest.raises(RuleError):
        multiply_ineq(ineq({1: 1}, 0), -2)


def test_weaken_requires_masked_truth():
    assert weaken_ineq(ineq({1: 1}, 1), ineq({2: -1}, -1)) == ineq({1: 1, 2: -1}, 0)
    with pytest.raises(RuleError):
        weaken_ineq(ineq({1: 1}, 1), ineq({2: 1}, 1))


def test_decide_accepts_contradiction_by_addition():
    hyps = [ineq({1: 1}, 1), ineq({1: -1}, 0)]
    accepted, trace = decide_cp(hyps, ineq({}, 1), w=1, L=2)
    assert accepted
    assert check_trace(trace, hyps, ineq({}, 1), w=1, L=2)


def test_decide_accepts_truth_axiom():
    accepted, trace = decide_cp([], TRUTH_AXIOM, w=0, L=1)
    assert accepted
    assert trace == (AxiomStep(TRUTH_AXIOM),)


def test_decide_rejects_semantically():
    accepted, trace = decide_cp([ineq({1: 1}, 0)], ineq({1: 1}, 1), w=1, L=2)
    assert not accepted and trace is None


def test_decide_validates_target_budget():
    with pytest.raises(InputError):
        decide_cp([], ineq({1: 1, 2: 1}, 1), w=1, L=4)
    with pytest.raises(InputError):
        decide_cp([], ineq({1: 3}, 1), w=1, L=2)


def test_unit_propagation_chain():
    # clauses x1, (x1 -> x2), (x2 -> x3) encoded as inequalities
    hyps = [
        encode_clause_cp(make_clause([1])),
        encode_clause_cp(make_clause([-1, 2])),
        encode_clause_cp(make_clause([-2, 3])),
    ]
    target = encode_clause_cp(make_clause([3]))
    accepted, trace = decide_cp(hyps, target, w=1, L=2)
    assert accepted
    assert check_trace(trace, hyps, target, w=1, L=2)


def test_division_needed_for_some_targets():
    # the hypothesis line itself has l1-norm 5, so the proof needs L >= 5
    hyps = [ineq({1: 2, 2: 2}, 1)]
    accepted, trace = decide_cp(hyps, ineq({1: 1, 2: 1}, 1), w=2, L=5)
    assert accepted
    assert check_trace(trace, hyps, ineq({1: 1, 2: 1}, 1), w=2, L=5)


def test_restrict_ineq_examples():
    phi = ineq({1: 2, 2: -1}, 1)
    assert restrict_ineq(phi, pa("1*")) == TRUE
    assert restrict_ineq(phi, pa("*1")) == ineq({1: 2}, 2)
    assert restrict_ineq(ineq({1: 1, 2: 1}, 1), pa("0*")) == ineq({2: 1}, 1)


def test_restrict_never_grows_norms():
    rng = random.Random(8)
    for _ in range(200):
        n = rng.randint(1, 4)
        phi = random_ineq(rng, n)
        rho = PartialAssignment(
            None if rng.random() < 0.5 else rng.randint(0, 1) for _ in range(n)
        )
        r = restrict_ineq(phi, rho)
        if r != TRUE:
            assert r.l1_norm <= phi.l1_norm
            assert r.sparsity <= phi.sparsity


def test_encode_clause_cp():
    assert encode_clause_cp(make_clause([1, -2])) == ineq({1: 1, 2: -1}, 0)
    assert encode_clause_cp(make_clause([1])) == ineq({1: 1}, 1)
    assert encode_clause_cp(make_clause([-1])) == ineq({1: -1}, 0)
    assert encode_clause_cp(frozenset()) == ineq({}, 1)
    with pytest.raises(InputError):
        encode_clause_cp(TAUTOLOGY)


def test_encode_clause_cp_violation_matches_falsification():
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randint(1, 4)
        width = rng.randint(1, n)
        lits = [v if rng.random() < 0.5 else -v for v in rng.sample(range(1, n + 1), width)]
        clause = make_clause(lits)
        encoded = encode_clause_cp(clause)
        for x in product((0, 1), repeat=n):
            satisfied = any((lit > 0) == bool(x[abs(lit) - 1]) for lit in clause)
            assert encoded.holds_at(x) == satisfied


def random_ineq(rng, n, max_coeff=2):
    width = rng.randint(1, n)
    vars_ = rng.sample(range(1, n + 1), width)
    coeffs = {v: rng.choice([-2, -1, 1, 2]) for v in vars_}
    return LinIneq(coeffs, rng.randint(-2, 2))


def test_accepts_are_semantically_sound_randomized():
    rng = random.Random(717)
    for _ in range(60):
        n = rng.randint(1, 4)
        hyps = [random_ineq(rng, n) for _ in range(rng.randint(0, 3))]
        w, L = 2, 4
        target = random_ineq(rng, n)
        if target.sparsity > w or target.l1_norm > L:
            continue
        accepted, trace = decide_cp(hyps, target, w, L)
        if not accepted:
            continue
        assert check_trace(trace, hyps, target, w, L)
        for x in product((0, 1), repeat=n):
            if all(h.holds_at(x) for h in hyps):
                assert target.holds_at(x)


def test_restriction_closure_randomized():
    rng = random.Random(718)
    closed = 0
    while closed < 25:
        n = rng.randint(1, 3)
        hyps = [random_ineq(rng, n) for _ in range(rng.randint(1, 3))]
        w, L = 2, 4
        target = random_ineq(rng, n)
        if target.sparsity > w or target.l1_norm > L:
            continue
        accepted, _ = decide_cp(hyps, target, w, L)
        if not accepted:
            continue
        closed += 1
        for _ in range(6):
            rho = PartialAssignment(
                None if rng.random() < 0.5 else rng.randint(0, 1) for _ in range(n)
            )
            r_target = restrict_ineq(target, rho)
            if r_target == TRUE:
                continue
            r_hyps = [r for r in (restrict_ineq(h, rho) for h in hyps) if r != TRUE]
            again, _ = decide_cp(r_hyps, r_target, w, L)
            assert again


def test_trace_checker_rejects_tampering():
    hyps = [ineq({1: 1}, 1), ineq({1: -1}, 0)]
    accepted, trace = decide_cp(hyps, ineq({}, 1), w=1, L=2)
    assert accepted
    broken = trace[:-1] + (HypothesisStep(0, ineq({}, 1)),)
    assert not check_trace(broken, hyps, ineq({}, 1), w=1, L=2)
