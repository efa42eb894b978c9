import random

import pytest

from pacreason.errors import InputError
from pacreason.formulas import Not, Var, disjunction
from pacreason.oracle import entails, sat_solve
from pacreason.resolution import Cnf, clause_to_formula, make_clause

from helpers import random_cnf, random_formula


def test_entails_reflexivity():
    assert entails([Var(1)], Var(1), 1)


def test_entails_modus_ponens():
    assert entails([disjunction([Not(Var(1)), Var(2)]), Var(1)], Var(2), 2)


def test_entails_empty_hypotheses():
    assert not entails([], Var(1), 1)


def test_entails_cap():
    with pytest.raises(InputError):
        entails([], Var(1), 25)


def test_sat_solve_contradiction():
    cnf = Cnf([make_clause([1]), make_clause([-1])], 1)
    assert sat_solve(cnf) is None


def test_sat_solve_returns_first_model():
    cnf = Cnf([make_clause([1, 2])], 2)
    model = sat_solve(cnf)
    assert model == (0, 1)  # lexicographically first


def test_sat_solve_empty_cnf():
    assert sat_solve(Cnf([], 2)) == (0, 0)


def test_entails_sat_duality_randomized():
    rng = random.Random(2024)
    for _ in range(120):
        n = rng.randint(1, 4)
        cnf = random_cnf(rng, n, max_clauses=5)
        query = random_formula(rng, n, depth=2)
        hyps = [clause_to_formula(c) for c in cnf.clauses]
        expected = all(
            evaluate_query(query, x)
            for x in satisfying_assignments(cnf)
        )
        assert entails(hyps, query, n) == expected


def satisfying_assignments(cnf):
    from itertools import product

    for x in product((0, 1), repeat=cnf.n):
        if all(
            any((lit > 0) == bool(x[abs(lit) - 1]) for lit in clause)
            for clause in cnf.clauses
        ):
            yield x


def evaluate_query(query, x):
    from pacreason.formulas import evaluate

    return evaluate(query, x)


def test_entails_monotone_in_hypotheses():
    rng = random.Random(55)
    for _ in range(80):
        n = rng.randint(1, 4)
        hyps = [random_formula(rng, n, depth=2) for _ in range(rng.randint(0, 3))]
        phi = random_formula(rng, n, depth=2)
        if entails(hyps, phi, n):
            extra = random_formula(rng, n, depth=2)
            assert entails(hyps + [extra], phi, n)
