import random
from fractions import Fraction

import pytest

from pacreason.errors import InputError
from pacreason.formulas import (
    Const,
    Not,
    PartialAssignment,
    Threshold,
    Var,
    WitnessStatus,
    conjunction,
    disjunction,
    evaluate,
    literal,
    refine,
    restrict,
    witness_status,
)

from helpers import random_formula, random_partial


def pa(text):
    return PartialAssignment.from_string(text)


def clause_x1_notx2_x3():
    return disjunction([Var(1), Not(Var(2)), Var(3)])


def test_evaluate_threshold_negative_coefficient():
    phi = Threshold((2, -3), (Var(1), Var(2)), 0)
    assert evaluate(phi, (1, 1)) is False


def test_evaluate_and_via_threshold():
    phi = conjunction([Var(1), Var(2)])
    assert evaluate(phi, (1, 1)) is True
    assert evaluate(phi, (1, 0)) is False


def test_evaluate_negation():
    assert evaluate(Not(Var(1)), (0,)) is True


def test_evaluate_out_of_range():
    with pytest.raises(InputError):
        evaluate(Var(3), (0, 1))


def test_witness_and_needs_both_children():
    phi = conjunction([Var(1), Var(2)])
    # oracle: over completions of (1,*), x2=0 falsifies and x2=1 satisfies
    rho = pa("1*")
    outcomes = {evaluate(phi, x) for x in rho.completions()}
    assert outcomes == {True, False}
    assert witness_status(phi, rho) is WitnessStatus.UNWITNESSED


def test_witness_clause_satisfied_literal():
    assert witness_status(clause_x1_notx2_x3(), pa("*0*")) is WitnessStatus.WITNESSED_TRUE


def test_witness_unset_variable():
    phi = Threshold((1,), (Var(1),), 1)
    assert witness_status(phi, pa("*")) is WitnessStatus.UNWITNESSED


def test_restrict_clause_drops_falsified_literal():
    got = restrict(clause_x1_notx2_x3(), pa("*1*"))
    assert got == Threshold((1, 1), (Var(1), Var(3)), 1)


def test_restrict_witnessed_clause_is_const_true():
    assert restrict(clause_x1_notx2_x3(), pa("*0*")) == Const(True)


def test_restrict_threshold_updates_bound():
    got = restrict(conjunction([Var(1), Var(2)]), pa("1*"))
    assert got == Threshold((1,), (Var(2),), 1)


def test_refine_merges_coordinates():
    assert refine(pa("1**"), {2: 0}) == pa("10*")
    assert refine(pa("**"), {}) == pa("**")
    assert refine(pa("0*"), {2: 1}) == pa("01")


def test_refine_rejects_set_coordinate():
    with pytest.raises(InputError):
        refine(pa("1*"), {1: 0})


def test_threshold_requires_children():
    with pytest.raises(InputError):
        Threshold((), (), 0)


def test_literal_helper():
    assert literal(2, True) == Var(2)
    assert literal(2, False) == Not(Var(2))


def test_restriction_and_witnessing_soundness_randomized():
    rng = random.Random(20240901)
    for _ in range(400):
        n = rng.randint(1, 6)
        phi = random_formula(rng, n)
        rho = random_partial(rng, n)
        status = witness_status(phi, rho)
        simplified = restrict(phi, rho)
        values = set()
        for x in rho.completions():
            v = evaluate(phi, x)
            assert evaluate(simplified, x) == v
            values.add(v)
        if status is WitnessStatus.WITNESSED_TRUE:
            assert values == {True}
            assert simplified == Const(True)
        elif status is WitnessStatus.WITNESSED_FALSE:
            assert values == {False}
            assert simplified == Const(False)
        else:
            assert simplified != Const(True)


def test_staged_restriction_randomized():
    rng = random.Random(77)
    for _ in range(300):
        n = rng.randint(1, 6)
        phi = random_formula(rng, n)
        rho = random_partial(rng, n)
        # split rho into a coarser sigma plus the refinement tau back to rho
        sigma_entries = []
        tau = {}
        for i, e in enumerate(rho.entries, start=1):
            if e is not None and rng.random() < 0.5:
                sigma_entries.append(None)
                tau[i] = e
            else:
                sigma_entries.append(e)
        sigma = PartialAssignment(sigma_entries)
        assert refine(sigma, tau) == rho
        assert restrict(phi, rho) == restrict(restrict(phi, sigma), sigma_to_tau(sigma, tau, n))


def sigma_to_tau(sigma, tau, n):
    # tau as a partial assignment over all n coordinates (masked elsewhere)
    return PartialAssignment(
        tau.get(i) if sigma.entries[i - 1] is None else None for i in range(1, n + 1)
    )


def test_restrict_idempotent_under_empty_refinement():
    rng = random.Random(5)
    empty = {}
    for _ in range(100):
        n = rng.randint(1, 5)
        phi = random_formula(rng, n)
        rho = random_partial(rng, n)
        once = restrict(phi, rho)
        assert restrict(once, PartialAssignment.all_masked(n)) == once
        assert refine(rho, empty) == rho


def test_partial_assignment_parsing_roundtrip():
    rho = pa("1*0")
    assert rho.value(1) == 1 and rho.value(2) is None and rho.value(3) == 0
    assert str(rho) == "1*0"
    with pytest.raises(InputError):
        pa("10x")


def test_fraction_coefficients_are_exact():
    phi = Threshold((Fraction(1, 3), Fraction(2, 3)), (Var(1), Var(2)), 1)
    assert evaluate(phi, (1, 1)) is True
    assert evaluate(phi, (0, 1)) is False
