"""Explicit distributions over {0,1}^n, masking processes and example streams.

Masking follows a fixed, documented stream layout so that identical
(distribution, mask, count, seed) inputs always produce bit-identical example
streams: for each example we first draw the underlying assignment, then draw
any mask randomness coordinate by coordinate in index order.  The generator is
Python's Mersenne Twister seeded with the 64-bit seed; uniform integers are
drawn by rejection sampling over getrandbits, whose output is stable across
Python versions.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InputError, PreconditionError
from .formulas import Formula, PartialAssignment, evaluate

ENUMERATION_CAP = 20


class ExplicitDistribution:
    """A finitely supported distribution with exact rational weights summing to 1."""

    __slots__ = ("n", "support")

    def __init__(self, n: int, support: Iterable):
        support = tuple((tuple(x), Fraction(w)) for x, w in support)
        if not support:
            raise InputError("distribution needs a nonempty support")
        seen = set()
        for x, w in support:
            if len(x) != n or any(b not in (0, 1) for b in x):
                raise InputError(f"support point {x} is not a {n}-bit vector")
            if w <= 0:
                raise InputError(f"weight {w} of {x} is not positive")
            if x in seen:
                raise InputError(f"support point {x} repeated")
            seen.add(x)
        total = sum(w for _, w in support)
        if total != 1:
            raise InputError(f"weights sum to {total}, expected exactly 1")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "support", support)

    @classmethod
    def point_mass(cls, x) -> "ExplicitDistribution":
        x = tuple(x)
        return cls(len(x), [(x, Fraction(1))])

    @classmethod
    def uniform(cls, points) -> "ExplicitDistribution":
        points = [tuple(x) for x in points]
        w = Fraction(1, len(points))
        return cls(len(points[0]), [(x, w) for x in points])

    def __eq__(self, other):
        return (
            isinstance(other, ExplicitDistribution)
            and self.n == other.n
            and sorted(self.support) == sorted(other.support)
        )

    def __repr__(self):
        return f"ExplicitDistribution(n={self.n}, support={list(self.support)!r})"

    def __setattr__(self, name, value):
        raise AttributeError("ExplicitDistribution is immutable")


@dataclass(frozen=True)
class FixedMask:
    """Always hide the same set of coordinates."""

    hidden: frozenset

    def __init__(self, hidden):
        object.__setattr__(self, "hidden", frozenset(hidden))


@dataclass(frozen=True)
class IndependentMask:
    """Hide each coordinate independently with the same probability."""

    hide_prob: Fraction

    def __init__(self, hide_prob):
        p = Fraction(hide_prob)
        if not 0 <= p <= 1:
            raise InputError(f"hide probability must lie in [0,1], got {p}")
        object.__setattr__(self, "hide_prob", p)


class TableMask:
    """Deterministic mask that may depend on the underlying assignment."""

    __slots__ = ("rule",)

    def __init__(self, rule: Mapping):
        object.__setattr__(
            self, "rule", {tuple(x): frozenset(hidden) for x, hidden in rule.items()}
        )

    def __eq__(self, other):
        return isinstance(other, TableMask) and self.rule == other.rule

    def __repr__(self):
        return f"TableMask({self.rule!r})"

    def __setattr__(self, name, value):
        raise AttributeError("TableMask is immutable")


def _rand_below(rng: random.Random, bound: int) -> int:
    """Uniform integer in [0, bound) via rejection sampling on getrandbits."""
    if bound <= 0:
        raise InputError("bound must be positive")
    bits = (bound - 1).bit_length() or 1
    while True:
        r = rng.getrandbits(bits)
        if r < bound:
            return r


def _draw_assignment(dist: ExplicitDistribution, rng: random.Random):
    denom = math.lcm(*(w.denominator for _, w in dist.support))
    ticket = _rand_below(rng, denom)
    acc = 0
    for x, w in dist.support:
        acc += w.numerator * (denom // w.denominator)
        if ticket < acc:
            return x
    return dist.support[-1][0]  # unreachable: weights sum to 1


def _hidden_coords(mask, x, rng: random.Random) -> frozenset:
    if isinstance(mask, FixedMask):
        return mask.hidden
    if isinstance(mask, IndependentMask):
        p = mask.hide_prob
        hidden = set()
        for i in range(1, len(x) + 1):  # index order, one draw per coordinate
            if p == 1 or (p != 0 and _rand_below(rng, p.denominator) < p.numerator):
                hidden.add(i)
        return frozenset(hidden)
    if isinstance(mask, TableMask):
        x = tuple(x)
        if x not in mask.rule:
            raise InputError(f"mask table has no rule for support point {x}")
        return mask.rule[x]
    raise InputError(f"unknown mask spec: {mask!r}")


def draw_examples(dist: ExplicitDistribution, mask, m: int, seed: int):
    """Draw `m` (assignment, masked example) pairs; deterministic given `seed`."""
    if m < 1:
        raise InputError(f"example count must be at least 1, got {m}")
    if not 0 <= seed < 2**64:
        raise InputError("seed must be a 64-bit unsigned integer")
    rng = random.Random(seed)
    out = []
    for _ in range(m):
        x = _draw_assignment(dist, rng)
        hidden = _hidden_coords(mask, x, rng)
        rho = PartialAssignment(
            None if (i + 1) in hidden else x[i] for i in range(dist.n)
        )
        out.append((x, rho))
    return out


def draw_masked_examples(dist: ExplicitDistribution, mask, m: int, seed: int):
    """Masked example stream only (sources discarded)."""
    return [rho for _, rho in draw_examples(dist, mask, m, seed)]


def validity(dist: ExplicitDistribution, phi: Formula) -> Fraction:
    """Exact probability that `phi` holds under `dist`."""
    return sum(
        (w for x, w in dist.support if evaluate(phi, x)),
        Fraction(0),
    )


def tight_union_bound_distribution(
    psis, epsilons, n: int, cap: int = ENUMERATION_CAP
) -> ExplicitDistribution:
    """A distribution on which each formula is exactly (1-eps_i)-valid and their
    conjunction exactly (1-sum eps_i)-valid.

    Puts weight eps_i on a point satisfying every formula but the i-th, and the
    remaining weight on a point satisfying all of them.  Points are found by
    lexicographic enumeration, so the result is deterministic.
    """
    psis = list(psis)
    epsilons = [Fraction(e) for e in epsilons]
    if len(psis) != len(epsilons) or not psis:
        raise InputError("need one epsilon per formula, at least one formula")
    if any(e <= 0 for e in epsilons):
        raise InputError("epsilons must be positive")
    total = sum(epsilons)
    if total >= 1:
        raise PreconditionError(f"epsilons sum to {total}, need strictly less than 1")
    if n > cap:
        raise InputError(f"{n} variables exceed the enumeration cap {cap}")

    from itertools import product

    points = list(product((0, 1), repeat=n))
    values = [[evaluate(psi, x) for psi in psis] for x in points]

    common = next(
        (x for x, vals in zip(points, values) if all(vals)),
        None,
    )
    if common is None:
        raise PreconditionError("no assignment satisfies all formulas")

    support = []
    for i in range(len(psis)):
        xi = next(
            (
                x
                for x, vals in zip(points, values)
                if not vals[i] and all(v for j, v in enumerate(vals) if j != i)
            ),
            None,
        )
        if xi is None:
            raise PreconditionError(
                f"formula {i + 1} is entailed by the others; no separating point exists"
            )
        support.append((xi, epsilons[i]))
    support.append((common, 1 - total))
    return ExplicitDistribution(n, support)
