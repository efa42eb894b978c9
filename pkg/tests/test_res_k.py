import random
from itertools import combinations

import pytest

from pacreason.errors import InputError
from pacreason.formulas import Const, PartialAssignment, TRUE, evaluate
from pacreason.oracle import entails
from pacreason.res_k import (
    BOTTOM,
    KDnf,
    check_trace,
    decide_resk_width,
    kdnf_to_formula,
    negate_query,
    restrict_kdnf,
)

from helpers import random_partial


def kd(*terms):
    return KDnf(terms)


def pa(text):
    return PartialAssignment.from_string(text)


def test_term_validation():
    with pytest.raises(InputError):
        kd((1, -1))
    with pytest.raises(InputError):
        kd(())


def test_restrict_drops_falsified_term():
    phi = kd((1, 2), (3,))
    assert restrict_kdnf(phi, pa("0**")) == kd((3,))


def test_restrict_strips_satisfied_literal():
    assert restrict_kdnf(kd((1, 2)), pa("1*")) == kd((2,))


def test_restrict_satisfied_term_gives_true():
    assert restrict_kdnf(kd((1,), (2,)), pa("1*")) == TRUE


def test_restrict_all_literals_collapses_to_true():
    one = kd((1,), (-1,), (2,), (-2,))
    assert restrict_kdnf(one, pa("**")) == TRUE


def test_decide_single_cut():
    accepted, trace = decide_resk_width([kd((1,)), kd((-1,), (2,))], kd((2,)), k=1, w=1)
    assert accepted
    assert check_trace(trace, [kd((1,)), kd((-1,), (2,))], kd((2,)), 1, 1)


def test_decide_and_introduction():
    hyps = [kd((1,)), kd((2,))]
    accepted, trace = decide_resk_width(hyps, kd((1, 2)), k=2, w=1)
    assert accepted
    assert check_trace(trace, hyps, kd((1, 2)), 2, 1)


def test_decide_reject_on_countermodel():
    accepted, trace = decide_resk_width([kd((1,))], kd((2,)), k=1, w=1)
    assert not accepted and trace is None


def test_decide_needs_intermediate_weakening():
    # (x1 and x3) or x2 requires weakening x1 to x1 or x2 before introduction
    hyps = [kd((1,)), kd((3,), (2,))]
    target = kd((1, 3), (2,))
    accepted, trace = decide_resk_width(hyps, target, k=2, w=2)
    assert accepted
    assert check_trace(trace, hyps, target, 2, 2)


def test_decide_width_gate():
    with pytest.raises(InputError):
        decide_resk_width([kd((1,))], kd((1,), (2,), (3,)), k=1, w=2)
    with pytest.raises(InputError):
        decide_resk_width([kd((1, 2, 3))], kd((1,)), k=2, w=1)


def test_bottom_hypothesis_derives_anything():
    accepted, trace = decide_resk_width([BOTTOM], kd((2,)), k=1, w=1)
    assert accepted
    assert check_trace(trace, [BOTTOM], kd((2,)), 1, 1)


def test_negate_query():
    assert negate_query([[frozenset({1})]], k=1) == [kd((-1,))]
    assert negate_query([[frozenset({1, 2})]], k=2) == [kd((-1, -2))]
    assert negate_query([[frozenset()]], k=1) == [TRUE]
    with pytest.raises(InputError):
        negate_query([[frozenset({1, 2})]], k=1)


def test_negate_query_skips_tautological_clause():
    from pacreason.resolution import TAUTOLOGY

    assert negate_query([[TAUTOLOGY, frozenset({1})]], k=1) == [kd((-1,))]


def test_negate_query_refutation_pipeline():
    # KB (not-x1 or x2) with query clause (x2) and x1 known: refute together
    kb = [kd((-1,), (2,))]
    negated = negate_query([[frozenset({2})]], k=1)
    accepted, trace = decide_resk_width(kb + [kd((1,))] + negated, BOTTOM, k=1, w=1)
    assert accepted


def test_trace_checker_rejects_tampering():
    hyps = [kd((1,)), kd((-1,), (2,))]
    accepted, trace = decide_resk_width(hyps, kd((2,)), k=1, w=1)
    assert accepted
    broken = list(trace)
    broken[-1] = type(trace[-1])(kd((3,)), trace[-1].rule, trace[-1].premises)
    assert not check_trace(tuple(broken), hyps, kd((3,)), 1, 1)


def random_kdnf(rng, n, k, max_width):
    terms = []
    for _ in range(rng.randint(1, max_width)):
        size = rng.randint(1, k)
        vars_ = rng.sample(range(1, n + 1), min(size, n))
        terms.append(tuple(v if rng.random() < 0.5 else -v for v in vars_))
    return KDnf(terms)


def test_soundness_against_oracle_randomized():
    rng = random.Random(909)
    for _ in range(60):
        n = rng.randint(2, 4)
        k, w = 2, 2
        hyps = [random_kdnf(rng, n, k, w) for _ in range(rng.randint(1, 3))]
        target = random_kdnf(rng, n, k, w)
        accepted, trace = decide_resk_width(hyps, target, k, w)
        if accepted:
            assert entails([kdnf_to_formula(h) for h in hyps], kdnf_to_formula(target), n)
            assert check_trace(trace, hyps, target, k, w)


def test_refutation_restriction_closure_randomized():
    rng = random.Random(910)
    closed = 0
    while closed < 25:
        n = rng.randint(2, 3)
        k, w = 2, 2
        hyps = [random_kdnf(rng, n, k, w) for _ in range(rng.randint(2, 4))]
        accepted, _ = decide_resk_width(hyps, BOTTOM, k, w)
        if not accepted:
            continue
        closed += 1
        for _ in range(8):
            rho = random_partial(rng, n)
            restricted = []
            for h in hyps:
                r = restrict_kdnf(h, rho)
                if r != TRUE:
                    restricted.append(r)
            again, _ = decide_resk_width(restricted, BOTTOM, k, w)
            assert again


def test_table_growth_is_monotone():
    rng = random.Random(911)
    for _ in range(10):
        n = 3
        k, w = 2, 2
        hyps = [random_kdnf(rng, n, k, w) for _ in range(2)]
        target = random_kdnf(rng, n, k, w)
        stats = {}
        decide_resk_width(hyps, target, k, w, stats=stats)
        sizes = stats["table_sizes"]
        assert all(a < b for a, b in zip(sizes, sizes[1:]))
        assert len(sizes) <= count_width_w_kdnfs(n, k, w) + 1


def count_width_w_kdnfs(n, k, w):
    literals = [s * v for v in range(1, n + 1) for s in (1, -1)]
    terms = []
    for size in range(1, k + 1):
        for combo in combinations(literals, size):
            if not any(-l in combo for l in combo):
                terms.append(frozenset(combo))
    total = 0
    for width in range(0, w + 1):
        total += len(list(combinations(terms, width)))
    return total


def test_kdnf_to_formula_semantics():
    phi = kd((1, -2), (3,))
    f = kdnf_to_formula(phi)
    for x in [(1, 0, 0), (0, 0, 1), (0, 1, 0), (1, 1, 0)]:
        expected = (x[0] == 1 and x[1] == 0) or x[2] == 1
        assert evaluate(f, x) == expected
