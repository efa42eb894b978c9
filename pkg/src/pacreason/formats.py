"""Line-oriented text formats: cnf, pasgn, kdnf, poly, cp, dist and mask specs.

Every format starts with a `p <kind> ...` header and ignores blank lines and
'#' comments (DIMACS 'c' comments are also accepted in cnf files).  Parsers
raise FormatError with a line number; serializers emit the canonical form, and
serialize(parse(text)) is byte-identical for canonical files.

Grammar summary:

    p cnf <n> <m>        clauses as DIMACS literal lists ending in 0
    p pasgn <n> <m>      m lines of n characters over {0,1,*}
    p kdnf <n> <k> <m>   m k-DNFs like x1&-x2|x3 (F is the empty disjunction)
    p poly <n> <m>       m polynomials: '; '-joined terms `<rational> x1 ~x2`
                         (~ marks a dual indeterminate; a bare rational is the
                         constant term; 0 is the zero polynomial)
    p cp <n> <m>         m inequalities like `x1:2 x2:-1 >= 1`
    p dist <n> <m>       m weighted points like `1/2 0110`
    p masktable <n> <m>  m rules `<assignment bits> <mask bits>` (1 = hidden)

Inline mask specs: `fixed:0110` (1 = hidden), `iid:<rational>`,
`table:<path>` (path resolved against the referencing file's directory).
"""

from __future__ import annotations

import os
from fractions import Fraction

from .errors import FormatError
from .formulas import PartialAssignment
from .cutting_planes import LinIneq
from .polycalc import Indet, Polynomial, monomial_key
from .res_k import KDnf
from .resolution import Cnf, make_clause
from .sampling import ExplicitDistribution, FixedMask, IndependentMask, TableMask


def _lines(text, allow_c_comments=False):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if allow_c_comments and line.startswith("c"):
            continue
        yield number, line


def _header(line, number, kind, count):
    parts = line.split()
    if parts[0] != "p" or len(parts) != count + 2 or parts[1] != kind:
        raise FormatError(f"line {number}: expected header 'p {kind}' with {count} fields")
    try:
        return [int(p) for p in parts[2:]]
    except ValueError:
        raise FormatError(f"line {number}: header fields must be integers") from None


def _fraction(token, number):
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"line {number}: bad rational {token!r}") from None


# ---------------------------------------------------------------- cnf


def parse_cnf(text) -> Cnf:
    lines = _lines(text, allow_c_comments=True)
    try:
        number, line = next(lines)
    except StopIteration:
        raise FormatError("line 1: empty cnf file") from None
    n, m = _header(line, number, "cnf", 2)
    clauses = []
    current = []
    for number, line in lines:
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise FormatError(f"line {number}: bad literal {token!r}") from None
            if lit == 0:
                clauses.append(make_clause(current))
                current = []
            else:
                if abs(lit) > n:
                    raise FormatError(f"line {number}: literal {lit} out of range for n={n}")
                current.append(lit)
    if current:
        raise FormatError("last clause is not terminated by 0")
    if len(clauses) != m:
        raise FormatError(f"header promises {m} clauses, found {len(clauses)}")
    return Cnf(clauses, n)


def _clause_tokens(clause):
    return sorted(clause, key=lambda lit: (abs(lit), lit < 0))


def serialize_cnf(cnf: Cnf) -> str:
    from .resolution import TAUTOLOGY

    body = []
    for clause in cnf.clauses:
        if clause is TAUTOLOGY:
            raise FormatError("the tautology clause is not serializable")
        body.append(" ".join(str(lit) for lit in _clause_tokens(clause) + [0]))
    head = f"p cnf {cnf.n} {len(cnf.clauses)}"
    return "\n".join([head] + body) + "\n"


# ---------------------------------------------------------------- pasgn


def parse_pasgns(text):
    lines = _lines(text)
    try:
        number, line = next(lines)
    except StopIteration:
        raise FormatError("line 1: empty pasgn file") from None
    n, m = _header(line, number, "pasgn", 2)
    out = []
    for number, line in lines:
        if len(line) != n or any(ch not in "01*" for ch in line):
            raise FormatError(f"line {number}: expected {n} characters over 0/1/*")
        out.append(PartialAssignment.from_string(line))
    if len(out) != m:
        raise FormatError(f"header promises {m} assignments, found {len(out)}")
    return n, out


def serialize_pasgns(n: int, assignments) -> str:
    assignments = list(assignments)
    head = f"p pasgn {n} {len(assignments)}"
    return "\n".join([head] + [str(a) for a in assignments]) + "\n"


# ---------------------------------------------------------------- kdnf


def _parse_literal(token, number):
    neg = token.startswith("-")
    body = token[1:] if neg else token
    if not body.startswith("x") or not body[1:].isdigit():
        raise FormatError(f"line {number}: bad literal {token!r}")
    var = int(body[1:])
    if var < 1:
        raise FormatError(f"line {number}: bad variable in {token!r}")
    return -var if neg else var


def parse_kdnf_file(text):
    lines = _lines(text)
    try:
        number, line = next(lines)
    except StopIteration:
        raise FormatError("line 1: empty kdnf file") from None
    n, k, m = _header(line, number, "kdnf", 3)
    formulas = []
    for number, line in lines:
        if line == "F":
            formulas.append(KDnf(()))
            continue
        terms = []
        for term_text in line.split("|"):
            lits = [_parse_literal(tok, number) for tok in term_text.split("&")]
            if len(lits) > k:
                raise FormatError(f"line {number}: term exceeds {k} literals")
            if any(abs(lit) > n for lit in lits):
                raise FormatError(f"line {number}: variable out of range for n={n}")
            terms.append(lits)
        formulas.append(KDnf(terms))
    if len(formulas) != m:
        raise FormatError(f"header promises {m} formulas, found {len(formulas)}")
    return n, k, formulas


def _literal_text(lit):
    return f"x{lit}" if lit > 0 else f"-x{-lit}"


def _term_key(term):
    return sorted((abs(lit), lit < 0) for lit in term)


def serialize_kdnf_file(n: int, k: int, formulas) -> str:
    formulas = list(formulas)
    body = []
    for phi in formulas:
        if not phi.terms:
            body.append("F")
            continue
        terms = sorted(phi.terms, key=_term_key)
        body.append(
            "|".join(
                "&".join(_literal_text(lit) for lit in sorted(t, key=lambda l: (abs(l), l < 0)))
                for t in terms
            )
        )
    head = f"p kdnf {n} {k} {len(formulas)}"
    return "\n".join([head] + body) + "\n"


# ---------------------------------------------------------------- poly


def _parse_indet(token, number):
    dual = token.startswith("~")
    body = token[1:] if dual else token
    if not body.startswith("x") or not body[1:].isdigit():
        raise FormatError(f"line {number}: bad indeterminate {token!r}")
    var = int(body[1:])
    if var < 1:
        raise FormatError(f"line {number}: bad variable in {token!r}")
    return Indet(var, dual)


def parse_poly_file(text):
    lines = _lines(text)
    try:
        number, line = next(lines)
    except StopIteration:
        raise FormatError("line 1: empty poly file") from None
    n, m = _header(line, number, "poly", 2)
    polys = []
    for number, line in lines:
        if line == "0":
            polys.append(Polynomial())
            continue
        terms = []
        for term_text in line.split(";"):
            tokens = term_text.split()
            if not tokens:
                raise FormatError(f"line {number}: empty term")
            coeff = _fraction(tokens[0], number)
            indets = [_parse_indet(tok, number) for tok in tokens[1:]]
            if any(i.var > n for i in indets):
                raise FormatError(f"line {number}: variable out of range for n={n}")
            terms.append((frozenset(indets), coeff))
        polys.append(Polynomial(terms))
    if len(polys) != m:
        raise FormatError(f"header promises {m} polynomials, found {len(polys)}")
    return n, polys


def _fraction_text(value: Fraction) -> str:
    return str(value)


def serialize_poly_file(n: int, polys) -> str:
    polys = list(polys)
    body = []
    for p in polys:
        if p.is_zero:
            body.append("0")
            continue
        parts = []
        for mono in sorted(p.terms, key=monomial_key, reverse=True):
            tokens = [_fraction_text(p.terms[mono])]
            tokens.extend(
                ("~x" if i.dual else "x") + str(i.var)
                for i in sorted(mono, key=lambda i: (i.var, i.dual))
            )
            parts.append(" ".join(tokens))
        body.append("; ".join(parts))
    head = f"p poly {n} {len(polys)}"
    return "\n".join([head] + body) + "\n"


# ---------------------------------------------------------------- cp


def parse_cp_file(text):
    lines = _lines(text)
    try:
        number, line = next(lines)
    except StopIteration:
        raise FormatError("line 1: empty cp file") from None
    n, m = _header(line, number, "cp", 2)
    ineqs = []
    for number, line in lines:
        if ">=" not in line:
            raise FormatError(f"line {number}: missing '>='")
        lhs, _, rhs = line.partition(">=")
        try:
            bound = int(rhs.strip())
        except ValueError:
            raise FormatError(f"line {number}: bad bound {rhs.strip()!r}") from None
        coeffs = []
        for token in lhs.split():
            var_text, colon, coeff_text = token.partition(":")
            if (
                not colon
                or not var_text.startswith("x")
                or not var_text[1:].isdigit()
            ):
                raise FormatError(f"line {number}: bad coefficient token {token!r}")
            var = int(var_text[1:])
            if not 1 <= var <= n:
                raise FormatError(f"line {number}: variable out of range for n={n}")
            try:
                coeffs.append((var, int(coeff_text)))
            except ValueError:
                raise FormatError(f"line {number}: bad coefficient {coeff_text!r}") from None
        ineqs.append(LinIneq(coeffs, bound))
    if len(ineqs) != m:
        raise FormatError(f"header promises {m} inequalities, found {len(ineqs)}")
    return n, ineqs


def serialize_cp_file(n: int, ineqs) -> str:
    ineqs = list(ineqs)
    body = []
    for ineq in ineqs:
        tokens = [f"x{v}:{c}" for v, c in ineq.coeffs]
        tokens.append(f">= {ineq.bound}")
        body.append(" ".join(tokens))
    head = f"p cp {n} {len(ineqs)}"
    return "\n".join([head] + body) + "\n"


# ---------------------------------------------------------------- dist


def parse_dist(text) -> ExplicitDistribution:
    lines = _lines(text)
    try:
        number, line = next(lines)
    except StopIteration:
        raise FormatError("line 1: empty dist file") from None
    n, m = _header(line, number, "dist", 2)
    support = []
    for number, line in lines:
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"line {number}: expected '<weight> <bits>'")
        weight = _fraction(parts[0], number)
        bits = parts[1]
        if len(bits) != n or any(ch not in "01" for ch in bits):
            raise FormatError(f"line {number}: expected {n} bits")
        support.append((tuple(int(ch) for ch in bits), weight))
    if len(support) != m:
        raise FormatError(f"header promises {m} points, found {len(support)}")
    try:
        return ExplicitDistribution(n, support)
    except Exception as exc:
        raise FormatError(f"invalid distribution: {exc}") from None


def serialize_dist(dist: ExplicitDistribution) -> str:
    body = [
        f"{w.numerator}/{w.denominator} {''.join(str(b) for b in x)}"
        for x, w in dist.support
    ]
    head = f"p dist {dist.n} {len(dist.support)}"
    return "\n".join([head] + body) + "\n"


# ---------------------------------------------------------------- masks


def parse_mask_table(text) -> TableMask:
    lines = _lines(text)
    try:
        number, line = next(lines)
    except StopIteration:
        raise FormatError("line 1: empty masktable file") from None
    n, m = _header(line, number, "masktable", 2)
    rule = {}
    for number, line in lines:
        parts = line.split()
        if len(parts) != 2 or len(parts[0]) != n or len(parts[1]) != n:
            raise FormatError(f"line {number}: expected '<{n} bits> <{n} bits>'")
        if any(ch not in "01" for ch in parts[0] + parts[1]):
            raise FormatError(f"line {number}: mask table entries are over 0/1")
        x = tuple(int(ch) for ch in parts[0])
        hidden = frozenset(i + 1 for i, ch in enumerate(parts[1]) if ch == "1")
        rule[x] = hidden
    if len(rule) != m:
        raise FormatError(f"header promises {m} rules, found {len(rule)}")
    return TableMask(rule)


def parse_mask_spec(spec: str, n: int, base_dir: str = "."):
    kind, colon, rest = spec.partition(":")
    if not colon:
        raise FormatError(f"bad mask spec {spec!r}; expected fixed:, iid: or table:")
    if kind == "fixed":
        if len(rest) != n or any(ch not in "01" for ch in rest):
            raise FormatError(f"fixed mask pattern must be {n} characters over 0/1")
        return FixedMask(i + 1 for i, ch in enumerate(rest) if ch == "1")
    if kind == "iid":
        try:
            p = Fraction(rest)
        except (ValueError, ZeroDivisionError):
            raise FormatError(f"bad hide probability {rest!r}") from None
        if not 0 <= p <= 1:
            raise FormatError(f"hide probability {p} must lie in [0,1]")
        return IndependentMask(p)
    if kind == "table":
        path = rest if os.path.isabs(rest) else os.path.join(base_dir, rest)
        with open(path, "r", encoding="utf-8") as fh:
            return parse_mask_table(fh.read())
    raise FormatError(f"unknown mask kind {kind!r}")
