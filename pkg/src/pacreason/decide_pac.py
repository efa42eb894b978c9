"""The reduction from reasoning with masked examples to limited proof search.

Given a backend solving a limited decision problem for a restriction-closed
proof class, decide a query's (1-eps)-validity from a sample of masked
examples: restrict the query and hypotheses by each example, run the backend,
and accept exactly when the number of rejections stays within the budget
floor(eps * m).

A backend is any object with

    n                              -- variable count of its instances
    decide(query, hyps) -> bool    -- pure, deterministic
    restrict_query(query, rho)
    restrict_hyps(hyps, rho)

The verdict depends only on the multiset of per-example answers, so runs are
reproducible regardless of worker count; every example is always evaluated
(no early exit) to keep the reported failure count canonical.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, log

from .errors import InputError
from .sampling import draw_masked_examples

ACCEPT = "Accept"
REJECT = "Reject"


@dataclass(frozen=True)
class PacParams:
    epsilon: Fraction
    gamma: Fraction
    delta: Fraction

    def __post_init__(self):
        eps = Fraction(self.epsilon)
        gamma = Fraction(self.gamma)
        delta = Fraction(self.delta)
        for name, value in (("epsilon", eps), ("gamma", gamma), ("delta", delta)):
            if not 0 < value < 1:
                raise InputError(f"{name} must lie strictly between 0 and 1, got {value}")
        if eps + gamma > 1 or eps - gamma < 0:
            raise InputError(
                f"promise needs epsilon+gamma <= 1 and epsilon-gamma >= 0, "
                f"got epsilon={eps}, gamma={gamma}"
            )
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "delta", delta)


@dataclass(frozen=True)
class PacOutcome:
    verdict: str
    failed_count: int
    budget: int
    sample_count: int
    per_example: tuple  # True where the backend accepted

    @property
    def accepted(self) -> bool:
        return self.verdict == ACCEPT


def required_sample_size(gamma, delta) -> int:
    """ceil(ln(1/delta) / (2 gamma^2)), the Hoeffding sample count."""
    gamma = Fraction(gamma) if not isinstance(gamma, float) else gamma
    delta = Fraction(delta) if not isinstance(delta, float) else delta
    if not 0 < gamma < 1 or not 0 < delta < 1:
        raise InputError("gamma and delta must lie strictly between 0 and 1")
    return ceil(log(1 / float(delta)) / (2 * float(gamma) ** 2))


def failure_budget(epsilon, m: int) -> int:
    """floor(epsilon * m), computed exactly over the rationals."""
    product = Fraction(epsilon) * m
    return product.numerator // product.denominator


def decide_pac(backend, query, hyps, params: PacParams, examples, workers: int = 1) -> PacOutcome:
    """Run the backend on every restricted instance and tally rejections.

    Rejects exactly when strictly more than floor(epsilon * m) examples fail.
    """
    examples = list(examples)
    m = len(examples)
    if m < 1:
        raise InputError("need at least one example")
    n = backend.n
    for rho in examples:
        if len(rho) != n:
            raise InputError(f"example {rho} has length {len(rho)}, expected {n}")

    def run(rho):
        return backend.decide(
            backend.restrict_query(query, rho), backend.restrict_hyps(hyps, rho)
        )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            verdicts = tuple(pool.map(run, examples))
    else:
        verdicts = tuple(run(rho) for rho in examples)

    failed = sum(1 for ok in verdicts if not ok)
    budget = failure_budget(params.epsilon, m)
    verdict = REJECT if failed > budget else ACCEPT
    return PacOutcome(verdict, failed, budget, m, verdicts)


def decide_pac_from_distribution(
    backend,
    query,
    hyps,
    params: PacParams,
    dist,
    mask,
    seed: int,
    m: int = None,
    workers: int = 1,
) -> PacOutcome:
    """Draw exactly m examples (the Hoeffding count when m is omitted), then
    aggregate as decide_pac does."""
    if m is None:
        m = required_sample_size(params.gamma, params.delta)
    examples = draw_masked_examples(dist, mask, m, seed)
    return decide_pac(backend, query, hyps, params, examples, workers=workers)
