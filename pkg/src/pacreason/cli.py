"""Command-line front end.

Subcommands:

    decide   run the masked-example reduction with a proof-search backend
    prove    one backend call on explicit inputs (no sampling)
    sample   draw masked examples from an explicit distribution
    oracle   brute-force sat / entailment / validity checks
    encode   translate CNF clauses into polynomial or inequality form

Exit codes: 0 Accept, 1 Reject, 2 input or usage error.  The report printed
on stdout is a pure function of the configuration and seed; wall-clock timing
goes to stderr so reports stay byte-identical across runs.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import formats
from .backends import (
    CuttingPlanesBackend,
    PolynomialCalculusBackend,
    ResKWidthBackend,
    SpaceResolutionBackend,
)
from .decide_pac import PacParams, decide_pac, required_sample_size
from .errors import FormatError, InputError, RuleError
from .formulas import TRUE
from .oracle import entails, sat_solve
from .polycalc import PC, PCR
from .res_k import check_trace as check_resk_trace, negate_query
from .resolution import proof_to_text, search_space
from .sampling import draw_masked_examples, validity

SYSTEMS = ("res-space", "res-k-width", "pc", "pcr", "cp")

# backend knobs each system accepts; anything else is a usage error
SYSTEM_PARAMS = {
    "res-space": ("s",),
    "res-k-width": ("k", "w"),
    "pc": ("d",),
    "pcr": ("d",),
    "cp": ("w", "L"),
}


@dataclass
class ScenarioConfig:
    system: str
    epsilon: Fraction
    gamma: Fraction
    delta: Fraction
    params: dict
    kb_path: str
    query_path: str
    samples_path: str = None
    dist_path: str = None
    mask_spec: str = None
    seed: int = None
    m: int = None
    workers: int = 1
    per_example: bool = False


def _fraction_arg(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad rational {text!r}") from None


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _check_params(system, given):
    allowed = SYSTEM_PARAMS[system]
    for name, value in given.items():
        if value is not None and name not in allowed:
            raise InputError(f"parameter --{name} does not apply to system {system}")
    missing = [name for name in allowed if given.get(name) is None]
    if missing:
        raise InputError(
            f"system {system} needs parameter(s): {', '.join('--' + p for p in missing)}"
        )
    return {name: given[name] for name in allowed}


def _load_instance(config: ScenarioConfig):
    """Returns (backend, query, hyps, n) for the configured system."""
    system = config.system
    p = config.params
    if system == "res-space":
        kb = formats.parse_cnf(_read(config.kb_path))
        query_cnf = formats.parse_cnf(_read(config.query_path))
        if len(query_cnf.clauses) != 1:
            raise InputError("res-space queries are a single clause (one-clause cnf file)")
        if query_cnf.n != kb.n:
            raise InputError(f"query n={query_cnf.n} does not match kb n={kb.n}")
        return SpaceResolutionBackend(p["s"], kb.n), query_cnf.clauses[0], kb, kb.n
    if system == "res-k-width":
        n, k_file, hyps = formats.parse_kdnf_file(_read(config.kb_path))
        if k_file > p["k"]:
            raise InputError(f"kb file holds {k_file}-DNFs but --k is {p['k']}")
        query_cnf = formats.parse_cnf(_read(config.query_path))
        if query_cnf.n != n:
            raise InputError(f"query n={query_cnf.n} does not match kb n={n}")
        negated = tuple(
            phi for phi in negate_query([query_cnf.clauses], p["k"]) if phi != TRUE
        )
        return ResKWidthBackend(p["k"], p["w"], n), negated, tuple(hyps), n
    if system in (PC, PCR):
        n, hyps = formats.parse_poly_file(_read(config.kb_path))
        qn, queries = formats.parse_poly_file(_read(config.query_path))
        if len(queries) != 1:
            raise InputError("pc/pcr queries are a single polynomial")
        if qn != n:
            raise InputError(f"query n={qn} does not match kb n={n}")
        backend = PolynomialCalculusBackend(p["d"], n, mode=system)
        return backend, queries[0], tuple(hyps), n
    if system == "cp":
        n, hyps = formats.parse_cp_file(_read(config.kb_path))
        qn, queries = formats.parse_cp_file(_read(config.query_path))
        if len(queries) != 1:
            raise InputError("cp queries are a single inequality")
        if qn != n:
            raise InputError(f"query n={qn} does not match kb n={n}")
        return CuttingPlanesBackend(p["w"], p["L"], n), queries[0], tuple(hyps), n
    raise InputError(f"unknown system {system!r}")


def _load_examples(config: ScenarioConfig, n: int):
    if config.samples_path is not None:
        sample_n, examples = formats.parse_pasgns(_read(config.samples_path))
        if sample_n != n:
            raise InputError(f"samples n={sample_n} does not match instance n={n}")
        return examples
    if config.dist_path is None or config.mask_spec is None or config.seed is None:
        raise InputError("need either --samples or all of --dist, --mask and --seed")
    dist = formats.parse_dist(_read(config.dist_path))
    if dist.n != n:
        raise InputError(f"distribution n={dist.n} does not match instance n={n}")
    mask = formats.parse_mask_spec(
        config.mask_spec, n, base_dir=os.path.dirname(config.dist_path) or "."
    )
    m = config.m
    if m is None:
        m = required_sample_size(config.gamma, config.delta)
    return draw_masked_examples(dist, mask, m, config.seed)


def run_scenario(config: ScenarioConfig):
    """Execute the reduction for a scenario; returns (outcome, report text)."""
    backend, query, hyps, n = _load_instance(config)
    examples = _load_examples(config, n)
    params = PacParams(config.epsilon, config.gamma, config.delta)
    outcome = decide_pac(backend, query, hyps, params, examples, workers=config.workers)
    lines = [
        f"system={config.system}",
        f"epsilon={config.epsilon}",
        f"gamma={config.gamma}",
        f"delta={config.delta}",
        f"m={outcome.sample_count}",
        f"budget={outcome.budget}",
        f"failed={outcome.failed_count}",
    ]
    if config.per_example:
        lines.extend(
            f"example={i} verdict={'accept' if ok else 'reject'}"
            for i, ok in enumerate(outcome.per_example)
        )
    lines.append(f"verdict={outcome.verdict}")
    return outcome, "\n".join(lines) + "\n"


def _cmd_decide(args) -> int:
    config = ScenarioConfig(
        system=args.system,
        epsilon=args.epsilon,
        gamma=args.gamma,
        delta=args.delta,
        params=_check_params(
            args.system, {"s": args.s, "k": args.k, "w": args.w, "d": args.d, "L": args.L}
        ),
        kb_path=args.kb,
        query_path=args.query,
        samples_path=args.samples,
        dist_path=args.dist,
        mask_spec=args.mask,
        seed=args.seed,
        m=args.m,
        workers=args.workers,
        per_example=args.per_example,
    )
    started = time.perf_counter()
    outcome, report = run_scenario(config)
    elapsed = time.perf_counter() - started
    sys.stdout.write(report)
    sys.stderr.write(f"wall_time_s={elapsed:.3f}\n")
    return 0 if outcome.accepted else 1


def _cmd_prove(args) -> int:
    config = ScenarioConfig(
        system=args.system,
        epsilon=Fraction(1, 2),
        gamma=Fraction(1, 4),
        delta=Fraction(1, 4),
        params=_check_params(
            args.system, {"s": args.s, "k": args.k, "w": args.w, "d": args.d, "L": args.L}
        ),
        kb_path=args.kb,
        query_path=args.query,
    )
    backend, query, hyps, _ = _load_instance(config)
    if args.show_proof and args.system == "res-space":
        proof = search_space(hyps, config.params["s"], query)
        accepted = proof is not None
        if accepted:
            sys.stdout.write(proof_to_text(proof) + "\n")
    elif args.show_proof and args.system == "res-k-width":
        from .res_k import BOTTOM, decide_resk_width

        accepted, trace = decide_resk_width(
            list(hyps) + list(query), BOTTOM, config.params["k"], config.params["w"]
        )
        if accepted:
            assert check_resk_trace(
                trace, list(hyps) + list(query), BOTTOM, config.params["k"], config.params["w"]
            )
            for step in trace:
                sys.stdout.write(f"{step.rule}: {step.formula!r}\n")
    elif args.show_proof and args.system == "cp":
        from .cutting_planes import decide_cp

        accepted, trace = decide_cp(
            list(hyps), query, config.params["w"], config.params["L"]
        )
        if accepted:
            for i, step in enumerate(trace):
                sys.stdout.write(f"{i}: {type(step).__name__} {step.conclusion!r}\n")
    else:
        accepted = backend.decide(query, hyps)
    sys.stdout.write(f"verdict={'Accept' if accepted else 'Reject'}\n")
    return 0 if accepted else 1


def _cmd_sample(args) -> int:
    dist = formats.parse_dist(_read(args.dist))
    mask = formats.parse_mask_spec(
        args.mask, dist.n, base_dir=os.path.dirname(args.dist) or "."
    )
    examples = draw_masked_examples(dist, mask, args.m, args.seed)
    text = formats.serialize_pasgns(dist.n, examples)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_oracle(args) -> int:
    if args.action == "sat":
        cnf = formats.parse_cnf(_read(args.cnf))
        model = sat_solve(cnf)
        if model is None:
            sys.stdout.write("unsat\n")
            return 1
        sys.stdout.write("sat " + "".join(str(b) for b in model) + "\n")
        return 0
    if args.action == "entails":
        kb = formats.parse_cnf(_read(args.kb))
        query = formats.parse_cnf(_read(args.query))
        if query.n != kb.n:
            raise InputError(f"query n={query.n} does not match kb n={kb.n}")
        from .resolution import clause_to_formula

        hyps = [clause_to_formula(c) for c in kb.clauses]
        result = entails(hyps, query.to_formula(), kb.n)
        sys.stdout.write("entails\n" if result else "does-not-entail\n")
        return 0 if result else 1
    if args.action == "validity":
        dist = formats.parse_dist(_read(args.dist))
        query = formats.parse_cnf(_read(args.query))
        if query.n != dist.n:
            raise InputError(f"query n={query.n} does not match dist n={dist.n}")
        value = validity(dist, query.to_formula())
        sys.stdout.write(f"validity={value}\n")
        return 0
    raise InputError(f"unknown oracle action {args.action!r}")


def _cmd_encode(args) -> int:
    cnf = formats.parse_cnf(_read(args.cnf))
    if args.target == "pcr":
        from .polycalc import encode_clause_pcr

        text = formats.serialize_poly_file(
            cnf.n, [encode_clause_pcr(c) for c in cnf.clauses]
        )
    else:
        from .cutting_planes import encode_clause_cp

        text = formats.serialize_cp_file(
            cnf.n, [encode_clause_cp(c) for c in cnf.clauses]
        )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _add_backend_params(parser):
    parser.add_argument("--s", type=int, help="clause space bound (res-space)")
    parser.add_argument("--k", type=int, help="conjunction size bound (res-k-width)")
    parser.add_argument("--w", type=int, help="width (res-k-width) or sparsity (cp)")
    parser.add_argument("--d", type=int, help="degree bound (pc/pcr)")
    parser.add_argument("--L", type=int, help="l1-norm bound (cp)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pacreason",
        description="Decide (1-eps)-validity of propositional queries from "
        "knowledge bases plus partially masked examples.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    decide = sub.add_parser("decide", help="run the masked-example reduction")
    decide.add_argument("--system", choices=SYSTEMS, required=True)
    decide.add_argument("--epsilon", type=_fraction_arg, required=True)
    decide.add_argument("--gamma", type=_fraction_arg, required=True)
    decide.add_argument("--delta", type=_fraction_arg, required=True)
    _add_backend_params(decide)
    decide.add_argument("--kb", required=True, help="knowledge base file")
    decide.add_argument("--query", required=True, help="query file")
    decide.add_argument("--samples", help="pasgn file of masked examples")
    decide.add_argument("--dist", help="dist file to sample from")
    decide.add_argument("--mask", help="mask spec: fixed:BITS, iid:P or table:PATH")
    decide.add_argument("--seed", type=int, help="64-bit stream seed")
    decide.add_argument("--m", type=int, help="example count (default: Hoeffding size)")
    decide.add_argument("--workers", type=int, default=1)
    decide.add_argument("--per-example", action="store_true", dest="per_example")
    decide.set_defaults(func=_cmd_decide)

    prove = sub.add_parser("prove", help="single backend call on explicit inputs")
    prove.add_argument("--system", choices=SYSTEMS, required=True)
    _add_backend_params(prove)
    prove.add_argument("--kb", required=True)
    prove.add_argument("--query", required=True)
    prove.add_argument("--show-proof", action="store_true", dest="show_proof")
    prove.set_defaults(func=_cmd_prove)

    sample = sub.add_parser("sample", help="emit masked examples")
    sample.add_argument("--dist", required=True)
    sample.add_argument("--mask", required=True)
    sample.add_argument("--seed", type=int, required=True)
    sample.add_argument("--m", type=int, required=True)
    sample.add_argument("--out")
    sample.set_defaults(func=_cmd_sample)

    oracle = sub.add_parser("oracle", help="brute-force ground truth")
    oracle_sub = oracle.add_subparsers(dest="action", required=True)
    sat = oracle_sub.add_parser("sat")
    sat.add_argument("--cnf", required=True)
    ent = oracle_sub.add_parser("entails")
    ent.add_argument("--kb", required=True)
    ent.add_argument("--query", required=True)
    val = oracle_sub.add_parser("validity")
    val.add_argument("--dist", required=True)
    val.add_argument("--query", required=True)
    oracle.set_defaults(func=_cmd_oracle)

    encode = sub.add_parser("encode", help="clause encodings")
    encode.add_argument("target", choices=("pcr", "cp"))
    encode.add_argument("--cnf", required=True)
    encode.add_argument("--out")
    encode.set_defaults(func=_cmd_encode)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (InputError, FormatError, RuleError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
