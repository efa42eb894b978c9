"""Shared random generators for the test suite (seeded, deterministic)."""

from fractions import Fraction

from pacreason.formulas import (
    Const,
    Not,
    PartialAssignment,
    Threshold,
    Var,
)
from pacreason.resolution import Cnf, make_clause


def random_formula(rng, n, depth=3):
    roll = rng.random()
    if depth == 0 or roll < 0.25:
        if roll < 0.05:
            return Const(rng.random() < 0.5)
        return Var(rng.randint(1, n))
    if roll < 0.45:
        return Not(random_formula(rng, n, depth - 1))
    width = rng.randint(1, 4)
    children = tuple(random_formula(rng, n, depth - 1) for _ in range(width))
    coeffs = tuple(
        Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2]))
        for _ in range(width)
    )
    bound = Fraction(rng.randint(-3, 3), rng.choice([1, 2]))
    return Threshold(coeffs, children, bound)


def random_partial(rng, n, mask_prob=0.5):
    return PartialAssignment(
        None if rng.random() < mask_prob else rng.randint(0, 1) for _ in range(n)
    )


def random_clause(rng, n, max_width=3):
    width = rng.randint(1, min(max_width, n))
    vars_ = rng.sample(range(1, n + 1), width)
    return make_clause(v if rng.random() < 0.5 else -v for v in vars_)


def random_cnf(rng, n, max_clauses=8, max_width=3):
    m = rng.randint(1, max_clauses)
    return Cnf([random_clause(rng, n, max_width) for _ in range(m)], n)
