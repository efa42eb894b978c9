"""Deciding approximate validity of propositional queries from explicit
knowledge plus partially masked examples, via restriction-closed limited
proof search."""

from .decide_pac import (
    ACCEPT,
    REJECT,
    PacOutcome,
    PacParams,
    decide_pac,
    decide_pac_from_distribution,
    required_sample_size,
)
from .errors import FormatError, InputError, PreconditionError, RuleError
from .formulas import (
    Const,
    Not,
    PartialAssignment,
    Threshold,
    Var,
    WitnessStatus,
    evaluate,
    refine,
    restrict,
    witness_status,
)
from .sampling import (
    ExplicitDistribution,
    FixedMask,
    IndependentMask,
    TableMask,
    draw_masked_examples,
    tight_union_bound_distribution,
    validity,
)

__version__ = "0.1.0"

__all__ = [
    "ACCEPT",
    "REJECT",
    "Const",
    "ExplicitDistribution",
    "FixedMask",
    "FormatError",
    "IndependentMask",
    "InputError",
    "Not",
    "PacOutcome",
    "PacParams",
    "PartialAssignment",
    "PreconditionError",
    "RuleError",
    "TableMask",
    "Threshold",
    "Var",
    "WitnessStatus",
    "decide_pac",
    "decide_pac_from_distribution",
    "draw_masked_examples",
    "evaluate",
    "refine",
    "required_sample_size",
    "restrict",
    "tight_union_bound_distribution",
    "validity",
    "witness_status",
]
