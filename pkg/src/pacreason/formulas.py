"""Propositional formulas over the threshold basis.

Formulas are built from boolean constants, variables x1..xn, negation and
rational-weighted threshold connectives [c1*f1 + ... + ck*fk >= b], which is
true when the coefficients of the true children sum to at least the bound.
k-ary AND is the threshold with all coefficients 1 and bound k; OR has bound 1.

Partial assignments over {0, 1, *} drive three-valued "witnessed" evaluation:
a formula is witnessed when its value is forced no matter how the masked
variables are filled in, judged locally per connective (no completion search).
Restriction partially evaluates a formula under a partial assignment,
collapsing witnessed subformulas to constants.

All values are immutable; all functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import InputError


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Var:
    index: int  # 1-based

    def __post_init__(self):
        if self.index < 1:
            raise InputError(f"variable index must be >= 1, got {self.index}")


@dataclass(frozen=True)
class Not:
    child: "Formula"


@dataclass(frozen=True)
class Threshold:
    coeffs: tuple
    children: tuple
    bound: Fraction

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        children = tuple(self.children)
        if len(coeffs) == 0 or len(coeffs) != len(children):
            raise InputError(
                "threshold needs equally many coefficients and children, at least one"
            )
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "children", children)
        object.__setattr__(self, "bound", Fraction(self.bound))


Formula = Union[Const, Var, Not, Threshold]

TRUE = Const(True)
FALSE = Const(False)


def conjunction(children: Iterable[Formula]) -> Formula:
    """k-ary AND as a threshold: all coefficients 1, bound k."""
    children = tuple(children)
    if not children:
        return TRUE
    return Threshold((1,) * len(children), children, len(children))


def disjunction(children: Iterable[Formula]) -> Formula:
    """k-ary OR as a threshold: all coefficients 1, bound 1."""
    children = tuple(children)
    if not children:
        return FALSE
    return Threshold((1,) * len(children), children, 1)


def literal(var: int, positive: bool) -> Formula:
    return Var(var) if positive else Not(Var(var))


class WitnessStatus(Enum):
    WITNESSED_TRUE = "witnessed_true"
    WITNESSED_FALSE = "witnessed_false"
    UNWITNESSED = "unwitnessed"

    @property
    def is_witnessed(self) -> bool:
        return self is not WitnessStatus.UNWITNESSED


class PartialAssignment:
    """A vector over {0, 1, *}; entry i (1-based) is None when masked."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable):
        entries = tuple(entries)
        for e in entries:
            if e not in (0, 1, None):
                raise InputError(f"partial assignment entries must be 0, 1 or *, got {e!r}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_string(cls, text: str) -> "PartialAssignment":
        table = {"0": 0, "1": 1, "*": None}
        try:
            return cls(table[ch] for ch in text)
        except KeyError as exc:
            raise InputError(f"bad partial assignment character {exc.args[0]!r}") from None

    @classmethod
    def all_masked(cls, n: int) -> "PartialAssignment":
        return cls((None,) * n)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def value(self, var: int):
        """Value of variable `var` (1-based): 0, 1 or None."""
        if not 1 <= var <= len(self.entries):
            raise InputError(f"variable x{var} out of range 1..{len(self.entries)}")
        return self.entries[var - 1]

    def is_set(self, var: int) -> bool:
        return self.value(var) is not None

    def masked_vars(self) -> tuple:
        return tuple(i + 1 for i, e in enumerate(self.entries) if e is None)

    def consistent_with(self, x: Iterable[int]) -> bool:
        x = tuple(x)
        return len(x) == len(self.entries) and all(
            e is None or e == xi for e, xi in zip(self.entries, x)
        )

    def completions(self):
        """All full assignments consistent with this partial assignment."""
        from itertools import product

        masked = [i for i, e in enumerate(self.entries) if e is None]
        base = list(self.entries)
        for bits in product((0, 1), repeat=len(masked)):
            for i, b in zip(masked, bits):
                base[i] = b
            yield tuple(base)

    def __eq__(self, other):
        return isinstance(other, PartialAssignment) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __str__(self):
        return "".join("*" if e is None else str(e) for e in self.entries)

    def __repr__(self):
        return f"PartialAssignment({self})"

    def __setattr__(self, name, value):
        raise AttributeError("PartialAssignment is immutable")


def refine(sigma: PartialAssignment, tau: Mapping[int, int]) -> PartialAssignment:
    """Merge `tau`, defined only on coordinates masked in `sigma`, into `sigma`."""
    entries = list(sigma.entries)
    for var, val in tau.items():
        if not 1 <= var <= len(entries):
            raise InputError(f"refinement touches x{var}, out of range 1..{len(entries)}")
        if entries[var - 1] is not None:
            raise InputError(f"refinement touches x{var}, already set in the base assignment")
        if val not in (0, 1):
            raise InputError(f"refinement value for x{var} must be 0 or 1, got {val!r}")
        entries[var - 1] = val
    return PartialAssignment(entries)


def evaluate(phi: Formula, x) -> bool:
    """Truth value of `phi` under the full assignment `x` (tuple of 0/1)."""
    if isinstance(phi, Const):
        return phi.value
    if isinstance(phi, Var):
        if not 1 <= phi.index <= len(x):
            raise InputError(f"variable x{phi.index} out of range 1..{len(x)}")
        return bool(x[phi.index - 1])
    if isinstance(phi, Not):
        return not evaluate(phi.child, x)
    if isinstance(phi, Threshold):
        total = Fraction(0)
        for c, child in zip(phi.coeffs, phi.children):
            if evaluate(child, x):
                total += c
        return total >= phi.bound
    raise InputError(f"not a formula: {phi!r}")


def witness_status(phi: Formula, rho: PartialAssignment) -> WitnessStatus:
    """Three-valued local evaluation of `phi` under the partial assignment `rho`.

    A threshold is witnessed true when the witnessed-true coefficients plus the
    most pessimistic (minimal) contribution of unwitnessed children already meet
    the bound, and witnessed false when even the most optimistic (maximal)
    contribution falls short.
    """
    if isinstance(phi, Const):
        return WitnessStatus.WITNESSED_TRUE if phi.value else WitnessStatus.WITNESSED_FALSE
    if isinstance(phi, Var):
        v = rho.value(phi.index)
        if v is None:
            return WitnessStatus.UNWITNESSED
        return WitnessStatus.WITNESSED_TRUE if v else WitnessStatus.WITNESSED_FALSE
    if isinstance(phi, Not):
        inner = witness_status(phi.child, rho)
        if inner is WitnessStatus.WITNESSED_TRUE:
            return WitnessStatus.WITNESSED_FALSE
        if inner is WitnessStatus.WITNESSED_FALSE:
            return WitnessStatus.WITNESSED_TRUE
        return WitnessStatus.UNWITNESSED
    if isinstance(phi, Threshold):
        base = Fraction(0)
        lo = Fraction(0)
        hi = Fraction(0)
        for c, child in zip(phi.coeffs, phi.children):
            status = witness_status(child, rho)
            if status is WitnessStatus.WITNESSED_TRUE:
                base += c
            elif status is WitnessStatus.UNWITNESSED:
                lo += min(Fraction(0), c)
                hi += max(Fraction(0), c)
        if base + lo >= phi.bound:
            return WitnessStatus.WITNESSED_TRUE
        if base + hi < phi.bound:
            return WitnessStatus.WITNESSED_FALSE
        return WitnessStatus.UNWITNESSED
    raise InputError(f"not a formula: {phi!r}")


def restrict(phi: Formula, rho: PartialAssignment) -> Formula:
    """Partial evaluation of `phi` under `rho`; witnessed subformulas collapse.

    Surviving variables keep their original indices, so restrictions compose.
    """
    status = witness_status(phi, rho)
    if status is WitnessStatus.WITNESSED_TRUE:
        return TRUE
    if status is WitnessStatus.WITNESSED_FALSE:
        return FALSE
    if isinstance(phi, Var):
        return phi
    if isinstance(phi, Not):
        return Not(restrict(phi.child, rho))
    if isinstance(phi, Threshold):
        coeffs = []
        children = []
        d = phi.bound
        for c, child in zip(phi.coeffs, phi.children):
            st = witness_status(child, rho)
            if st is WitnessStatus.WITNESSED_TRUE:
                d -= c
            elif st is WitnessStatus.UNWITNESSED:
                coeffs.append(c)
                children.append(restrict(child, rho))
        if not children:
            # unreachable when phi itself is unwitnessed; kept for safety
            return Const(d <= 0)
        return Threshold(tuple(coeffs), tuple(children), d)
    raise InputError(f"not a formula: {phi!r}")


def free_vars(phi: Formula) -> frozenset:
    if isinstance(phi, Const):
        return frozenset()
    if isinstance(phi, Var):
        return frozenset((phi.index,))
    if isinstance(phi, Not):
        return free_vars(phi.child)
    if isinstance(phi, Threshold):
        out = set()
        for child in phi.children:
            out |= free_vars(child)
        return frozenset(out)
    raise InputError(f"not a formula: {phi!r}")
