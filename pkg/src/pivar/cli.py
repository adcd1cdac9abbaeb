"""Command-line interface.

Subcommands: check-identity, lie-nilpotent, engel, degree-sets,
tideal-member, certify.  Reports are deterministic given identical
inputs and bounds; budgets and bounds are echoed so results are
reproducible.  Exit codes: 0 for definite verdicts, 2 for inconclusive
or budget-limited states, 1 for input errors.
"""

from __future__ import annotations

import argparse
import os
import re
import sys

from .algebras import (
    StructAlgebra,
    field_algebra,
    make_A,
    make_B,
    make_C,
    matrix_algebra,
    opposite,
    parse_algebra_file,
)
from .certifier import (
    Bounds,
    FieldMode,
    certify,
    render_certificate,
    render_machine,
)
from .errors import ParseError, PivarError
from .fields import FieldSpec, gf_make, is_prime
from .idcheck import (
    DEFAULT_BUDGET,
    IdentitySystem,
    SEM_FINITE,
    SEM_INFINITE,
    Witness,
    is_engel,
    is_lie_nilpotent,
    satisfies_system,
)
from .freealg import degree_sets
from .parsing import parse_poly, parse_representation
from .tideal import tideal_member


def _parse_field(text: str) -> FieldSpec:
    m = re.fullmatch(r"\s*GF\((\d+)(?:\^(\d+))?\)\s*", text)
    if not m:
        raise ParseError(f"bad field literal {text!r}; use GF(p) or GF(p^k)")
    p, k = int(m.group(1)), int(m.group(2) or 1)
    if not is_prime(p):
        raise ParseError(f"{p} is not prime")
    return gf_make(p, k)


def _field_from_size(q: int) -> FieldSpec:
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                break
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                break
            return gf_make(p, k)
    raise ParseError(f"{q} is not a prime power")


_CTOR = re.compile(r"\s*([A-Za-z]+)\s*\(")


def parse_algebra_spec(text: str, ambient: FieldSpec | None) -> StructAlgebra:
    """Constructor expressions C(N), A(...), B(q,q',j), M(n), op(...), F.

    F denotes the ambient field set by --field.  A path to an algebra
    definition file is accepted as well.
    """
    text = text.strip()
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            return parse_algebra_file(fh.read())
    alg, rest = _parse_ctor(text, ambient)
    if rest.strip():
        raise ParseError(f"trailing input in algebra spec: {rest!r}")
    return alg


def _parse_ctor(text: str, ambient: FieldSpec | None):
    text = text.lstrip()
    if text.startswith("F") and (len(text) == 1 or not text[1].isalnum()):
        if ambient is None:
            raise ParseError("algebra 'F' needs --field")
        return field_algebra(ambient), text[1:]
    m = _CTOR.match(text)
    if not m:
        raise ParseError(f"bad algebra spec near {text!r}")
    head = m.group(1)
    rest = text[m.end():]
    if head == "C":
        n, rest = _take_int(rest)
        rest = _take_close(rest)
        if ambient is None:
            raise ParseError("C(N) needs --field for the coefficient field")
        return make_C(n, ambient), rest
    if head == "A":
        inner, rest = _parse_ctor(rest, ambient)
        rest = _take_close(rest)
        return make_A(inner), rest
    if head == "op":
        inner, rest = _parse_ctor(rest, ambient)
        rest = _take_close(rest)
        return opposite(inner), rest
    if head == "M":
        n, rest = _take_int(rest)
        rest = _take_close(rest)
        if ambient is None:
            raise ParseError("M(n) needs --field")
        return matrix_algebra(n, ambient), rest
    if head == "B":
        q1, rest = _take_int(rest)
        rest = _take_comma(rest)
        q2, rest = _take_int(rest)
        rest = _take_comma(rest)
        j, rest = _take_int(rest)
        rest = _take_close(rest)
        return make_B(_field_from_size(q1), _field_from_size(q2), j), rest
    if head == "GF":
        q, rest = _take_int(rest)
        rest = _take_close(rest)
        return field_algebra(_field_from_size(q)), rest
    raise ParseError(f"unknown constructor {head!r}")


def _take_int(text: str):
    m = re.match(r"\s*(\d+)", text)
    if not m:
        raise ParseError(f"expected an integer near {text!r}")
    return int(m.group(1)), text[m.end():]


def _take_close(text: str):
    m = re.match(r"\s*\)", text)
    if not m:
        raise ParseError(f"expected ')' near {text!r}")
    return text[m.end():]


def _take_comma(text: str):
    m = re.match(r"\s*,", text)
    if not m:
        raise ParseError(f"expected ',' near {text!r}")
    return text[m.end():]


# ---------------------------------------------------------------------------
# subcommand handlers; each returns (exit_code, report)
# ---------------------------------------------------------------------------

def _need_field(args) -> FieldSpec:
    if not args.field:
        raise ParseError("--field is required")
    return _parse_field(args.field)


def _witness_lines(verdict, algebra) -> list[str]:
    w = verdict.witness
    if isinstance(w, Witness):
        return [f"  witness: {w.describe(algebra)}",
                f"  nonzero coordinates: {list(w.nonzero_coords)}"]
    if w is not None:
        return [f"  witness: {w}"]
    return []


def _cmd_check_identity(args) -> tuple[int, str]:
    field = _need_field(args)
    algebra = parse_algebra_spec(args.algebra, field)
    polys = tuple(parse_poly(t, field.p) for t in args.id)
    system = IdentitySystem(polys)
    semantics = SEM_INFINITE if args.semantics == "infinite" else SEM_FINITE
    verdict = satisfies_system(algebra, system, semantics, args.budget)
    lines = [f"algebra: {algebra.provenance.label} (dim {algebra.dim} "
             f"over GF({algebra.p}))",
             f"semantics: {verdict.semantics} | budget: {args.budget}"]
    for i, f in enumerate(polys):
        lines.append(f"identity {i + 1}: {f!r} = 0")
    if verdict.holds == "yes":
        lines.append("verdict: all identities hold")
        code = 0
    elif verdict.holds == "no":
        lines.append(f"verdict: fails identity {verdict.failing_index + 1}")
        lines.extend(_witness_lines(verdict.verdicts[verdict.failing_index],
                                    algebra))
        code = 0
    else:
        lines.append("verdict: budget exceeded (inconclusive)")
        code = 2
    return code, "\n".join(lines) + "\n"


def _cmd_lie_nilpotent(args) -> tuple[int, str]:
    field = _need_field(args)
    algebra = parse_algebra_spec(args.algebra, field)
    result = is_lie_nilpotent(algebra)
    chain = ",".join(str(d) for d in result.chain)
    lines = [f"algebra: {algebra.provenance.label} (dim {algebra.dim} "
             f"over GF({algebra.p}))",
             f"lower Lie chain dims: {chain}"]
    if result.nilpotent:
        lines.append(f"verdict: Lie nilpotent of class {result.nil_class} "
                     f"(W_{result.nil_class} = 0 holds)")
    else:
        lines.append(f"verdict: NOT Lie nilpotent "
                     f"(chain stabilizes at dim {result.chain[-1]})")
    return 0, "\n".join(lines) + "\n"


def _cmd_engel(args) -> tuple[int, str]:
    field = _need_field(args)
    algebra = parse_algebra_spec(args.algebra, field)
    verdict = is_engel(algebra, args.budget)
    lines = [f"algebra: {algebra.provenance.label} (dim {algebra.dim} "
             f"over GF({algebra.p}))",
             f"budget: {args.budget}"]
    if verdict.is_yes:
        lines.append("verdict: Engel (every ad(y) is nilpotent)")
        code = 0
    elif verdict.is_no:
        w = verdict.witness
        lines.append("verdict: NOT Engel")
        lines.append(f"  witness: ad(y) is not nilpotent for y = {w.y!r}; "
                     f"ad(y)^{w.power} moves x = {w.x!r}")
        code = 0
    else:
        lines.append("verdict: budget exceeded (inconclusive)")
        code = 2
    return code, "\n".join(lines) + "\n"


def _cmd_degree_sets(args) -> tuple[int, str]:
    field = _need_field(args)
    variables = [v.strip() for v in args.vars.split(",") if v.strip()]
    if not variables:
        raise ParseError("--vars needs at least one variable")
    rep = parse_representation(args.poly, field.p)
    if rep is None:
        raise ParseError(
            "input is not a sum of flank-bracket-flank terms; degree sets "
            "need that representation")
    sets = degree_sets(rep, variables)
    s_txt = "{" + ",".join(str(v) for v in sorted(sets.s_set)) + "}"
    lines = [f"representation: {len(rep)} terms over " +
             ",".join(variables),
             f"S={s_txt}"]
    if sets.d_set is None:
        lines.append("D=undefined (plain monomials in the representation)")
    else:
        d_txt = "{" + ",".join(f"({i},{j})"
                               for i, j in sorted(sets.d_set)) + "}"
        lines.append(f"D={d_txt}")
    return 0, "\n".join(lines) + "\n"


def _cmd_tideal_member(args) -> tuple[int, str]:
    field = _need_field(args)
    gens = tuple(parse_poly(t, field.p) for t in args.gen)
    query = parse_poly(args.poly, field.p)
    result = tideal_member(query, gens, args.bound, args.mode)
    bound = args.bound if args.bound is not None else query.total_degree()
    lines = [f"mode: {args.mode} | bound: {bound} | "
             f"generators: {len(gens)} | "
             f"span dim {result.span_dimension} | rows seen "
             f"{result.rows_seen}"]
    if result.member:
        lines.append("verdict: MEMBER of the consequence span")
        lines.append(f"certificate ({len(result.certificate)} rows):")
        for coeff, row in result.certificate:
            lines.append(f"  {coeff} * {row.describe()}")
        check = result.expand_certificate() == query
        lines.append(f"certificate re-expansion check: "
                     f"{'exact' if check else 'FAILED'}")
        code = 0 if check else 1
    else:
        lines.append("verdict: not in the span at this bound")
        lines.append(f"  caveat: {result.caveat}")
        code = 0
    return code, "\n".join(lines) + "\n"


def _cmd_certify(args) -> tuple[int, str]:
    mode = FieldMode.parse(args.mode)
    polys = tuple(parse_poly(t, mode.p) for t in args.id)
    system = IdentitySystem(polys)
    bounds = Bounds(truncation=args.truncation, ext_bound=args.ext_bound,
                    budget=args.budget)
    cert = certify(mode, system, bounds, assume_nonprime=args.assume_nonprime)
    report = render_machine(cert) + "\n" if args.machine else \
        render_certificate(cert)
    code = 0 if cert.verdict in ("LIE_NILPOTENT", "NOT_LIE_NILPOTENT") else 2
    return code, report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pivar",
        description="Polynomial-identity machinery for associative algebras "
                    "in characteristic p, with a Lie-nilpotency certifier.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, algebra=True):
        sp.add_argument("--field", help="ambient field, GF(p) or GF(p^k)")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="evaluation budget per check")
        if algebra:
            sp.add_argument("--algebra", required=True,
                            help="constructor expression (C(3), A(F), "
                                 "B(2,4,1), M(2), op(...)) or a file path")

    sp = sub.add_parser("check-identity",
                        help="test whether identities hold in an algebra")
    add_common(sp)
    sp.add_argument("--id", action="append", required=True,
                    help="identity polynomial (repeatable)")
    sp.add_argument("--semantics", choices=["finite", "infinite"],
                    default="finite",
                    help="finite: all elements of the algebra; infinite: "
                         "formally, for every infinite extension")
    sp.set_defaults(func=_cmd_check_identity)

    sp = sub.add_parser("lie-nilpotent",
                        help="lower Lie chain and nilpotency class")
    add_common(sp)
    sp.set_defaults(func=_cmd_lie_nilpotent)

    sp = sub.add_parser("engel", help="Engel test via adjoint nilpotency")
    add_common(sp)
    sp.set_defaults(func=_cmd_engel)

    sp = sub.add_parser("degree-sets",
                        help="S/D degree sets of a representation")
    sp.add_argument("--field", help="ambient field (default GF(2))",
                    default="GF(2)")
    sp.add_argument("--vars", required=True,
                    help="comma-separated variables the sets range over")
    sp.add_argument("poly", help="sum of flank-bracket-flank terms")
    sp.set_defaults(func=_cmd_degree_sets)

    sp = sub.add_parser("tideal-member",
                        help="bounded-degree T-ideal span membership")
    sp.add_argument("--field", help="ambient field")
    sp.add_argument("--mode", choices=["multilinear", "graded"],
                    default="multilinear")
    sp.add_argument("--bound", type=int, default=None,
                    help="target degree (defaults to the query degree)")
    sp.add_argument("--gen", action="append", required=True,
                    help="generator polynomial (repeatable)")
    sp.add_argument("poly", help="query polynomial")
    sp.set_defaults(func=_cmd_tideal_member)

    sp = sub.add_parser("certify",
                        help="Lie-nilpotency certificate for an identity "
                             "system")
    sp.add_argument("--mode", required=True,
                    help="GF(p), GF(p^k), or infinite(p)")
    sp.add_argument("--id", action="append", required=True,
                    help="identity polynomial (repeatable)")
    sp.add_argument("--truncation", type=int, default=None,
                    help="C truncation (default: max degree of the system)")
    sp.add_argument("--ext-bound", type=int, default=4,
                    help="cap on [G:F] in the B sweep")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--assume-nonprime", action="store_true",
                    help="assert non-primeness instead of requiring a "
                         "syntactic witness")
    sp.add_argument("--machine", action="store_true",
                    help="single-line key=value output")
    sp.set_defaults(func=_cmd_certify)
    return parser


def run(argv: list[str]) -> tuple[int, str]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (int(exc.code) if exc.code else 0), ""
    try:
        return args.func(args)
    except PivarError as exc:
        return 1, f"error: {exc}\n"
    except (OSError, ValueError) as exc:
        return 1, f"error: {exc}\n"


def main() -> None:
    code, report = run(sys.argv[1:])
    if report:
        sys.stdout.write(report)
    sys.exit(code)
