"""The polynomial input language.

Grammar (precedence low to high):

    expr   :=  ['-'] term (('+' | '-') term)*
    term   :=  factor (['*'] factor)*          juxtaposition multiplies
    factor :=  atom ('^' INT)*
    atom   :=  INT | NAME | '(' expr ')' | '[' expr ',' expr ']'
            |  W<n> '(' v1, ..., vn ')'        Lie word
            |  E<n> '(' x, y ')'               Engel polynomial

Variables are ASCII identifiers (the paper's subscripted letters map to
x1, y2, ...).  Coefficients reduce mod the ambient characteristic, which
must be declared by the caller.  Printing of canonical forms round-trips
through this parser.

When the input is literally a sum of flank-bracket-flank terms
(monomials and word*[v,w]*word commutator monomials) the structural
representation is extracted as well, for the degree-set machinery.
"""

from __future__ import annotations

import re

from .errors import ParseError, UnknownVariableArity
from .freealg import (
    CommTerm,
    NcPoly,
    PlainTerm,
    ReprTerm,
    commutator,
    engel_polynomial,
    lie_word,
)

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
                    r"|(?P<int>\d+)"
                    r"|(?P<sym>[-+*^()\[\],]))")

_SPECIAL = re.compile(r"^([WE])(\d+)$")


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                stripped = text[pos:].lstrip()
                if not stripped:
                    break
                at = len(text) - len(stripped)
                raise ParseError(f"unexpected character {stripped[0]!r}", at)
            kind = m.lastgroup
            self.items.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.items[self.i] if self.i < len(self.items) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.i += 1
        return tok

    def expect(self, value: str):
        tok = self.next()
        if tok[0] != "sym" or tok[1] != value:
            raise ParseError(f"expected {value!r}, got {tok[1]!r}", tok[2])
        return tok

    def at_sym(self, *values: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[0] == "sym" and tok[1] in values


# AST: ("num", n) ("var", name) ("add"/"sub"/"mul", a, b) ("neg", a)
#      ("pow", a, k) ("comm", a, b) ("lie", names) ("engel", n, x, y)

def _parse_expr(ts: _Tokens):
    if ts.at_sym("-"):
        ts.next()
        node = ("neg", _parse_term(ts))
    else:
        node = _parse_term(ts)
    while ts.at_sym("+", "-"):
        op = ts.next()[1]
        rhs = _parse_term(ts)
        node = ("add" if op == "+" else "sub", node, rhs)
    return node


def _parse_term(ts: _Tokens):
    node = _parse_factor(ts)
    while True:
        if ts.at_sym("*"):
            ts.next()
            node = ("mul", node, _parse_factor(ts))
            continue
        tok = ts.peek()
        if tok is not None and (tok[0] in ("name", "int")
                                or (tok[0] == "sym" and tok[1] in "([")):
            node = ("mul", node, _parse_factor(ts))
            continue
        return node


def _parse_factor(ts: _Tokens):
    node = _parse_atom(ts)
    while ts.at_sym("^"):
        ts.next()
        tok = ts.next()
        if tok[0] != "int":
            raise ParseError("exponent must be a positive integer", tok[2])
        k = int(tok[1])
        if k < 1:
            raise ParseError("exponent must be >= 1", tok[2])
        node = ("pow", node, k)
    return node


def _parse_atom(ts: _Tokens):
    tok = ts.next()
    kind, value, pos = tok
    if kind == "int":
        return ("num", int(value))
    if kind == "name":
        special = _SPECIAL.match(value)
        if special and ts.at_sym("("):
            ts.next()
            args = [_parse_name(ts)]
            while ts.at_sym(","):
                ts.next()
                args.append(_parse_name(ts))
            ts.expect(")")
            n = int(special.group(2))
            if special.group(1) == "W":
                if len(args) != n or n < 2:
                    raise UnknownVariableArity(
                        f"W{n} takes {n} distinct variables, got {len(args)}",
                        pos)
                return ("lie", tuple(args))
            if len(args) != 2 or n < 1:
                raise UnknownVariableArity(
                    f"E{n} takes 2 variables, got {len(args)}", pos)
            return ("engel", n, args[0], args[1])
        return ("var", value)
    if kind == "sym" and value == "(":
        node = _parse_expr(ts)
        ts.expect(")")
        return node
    if kind == "sym" and value == "[":
        left = _parse_expr(ts)
        ts.expect(",")
        right = _parse_expr(ts)
        ts.expect("]")
        return ("comm", left, right)
    raise ParseError(f"unexpected token {value!r}", pos)


def _parse_name(ts: _Tokens) -> str:
    tok = ts.next()
    if tok[0] != "name":
        raise ParseError(f"expected a variable name, got {tok[1]!r}", tok[2])
    return tok[1]


def _eval(node, p: int) -> NcPoly:
    op = node[0]
    if op == "num":
        return NcPoly(p, {(): node[1]})
    if op == "var":
        return NcPoly.var(node[1], p)
    if op == "add":
        return _eval(node[1], p) + _eval(node[2], p)
    if op == "sub":
        return _eval(node[1], p) - _eval(node[2], p)
    if op == "neg":
        return -_eval(node[1], p)
    if op == "mul":
        return _eval(node[1], p) * _eval(node[2], p)
    if op == "pow":
        base = _eval(node[1], p)
        out = base
        for _ in range(node[2] - 1):
            out = out * base
        return out
    if op == "comm":
        return commutator(_eval(node[1], p), _eval(node[2], p))
    if op == "lie":
        try:
            return lie_word(len(node[1]), node[1], p)
        except Exception as exc:
            raise UnknownVariableArity(str(exc)) from exc
    if op == "engel":
        try:
            return engel_polynomial(node[1], node[2], node[3], p)[1]
        except Exception as exc:
            raise UnknownVariableArity(str(exc)) from exc
    raise AssertionError(f"unknown node {op}")


def parse_poly(text: str, p: int) -> NcPoly:
    """Parse to a noncommutative polynomial over GF(p)."""
    ts = _Tokens(text)
    node = _parse_expr(ts)
    tok = ts.peek()
    if tok is not None:
        raise ParseError(f"trailing input {tok[1]!r}", tok[2])
    return _eval(node, p)


# ---------------------------------------------------------------------------
# representation extraction for degree sets
# ---------------------------------------------------------------------------

def _flatten_sum(node, sign: int, out: list[tuple[int, object]]):
    op = node[0]
    if op == "add":
        _flatten_sum(node[1], sign, out)
        _flatten_sum(node[2], sign, out)
    elif op == "sub":
        _flatten_sum(node[1], sign, out)
        _flatten_sum(node[2], -sign, out)
    elif op == "neg":
        _flatten_sum(node[1], -sign, out)
    else:
        out.append((sign, node))


def _flatten_product(node, out: list[object]):
    if node[0] == "mul":
        _flatten_product(node[1], out)
        _flatten_product(node[2], out)
    else:
        out.append(node)


def parse_representation(text: str, p: int) -> list[ReprTerm] | None:
    """The term-by-term structure, when the input is written as a sum of
    flank-bracket-flank commutator monomials and plain monomials.

    Returns None for inputs that use grouping the representation cannot
    express (nested brackets, W/E forms, parenthesized sums inside
    products).
    """
    ts = _Tokens(text)
    node = _parse_expr(ts)
    if ts.peek() is not None:
        raise ParseError("trailing input", ts.peek()[2])
    summands: list[tuple[int, object]] = []
    _flatten_sum(node, 1, summands)
    rep: list[ReprTerm] = []
    for sign, term in summands:
        factors: list[object] = []
        _flatten_product(term, factors)
        coeff = sign
        word_left: list[str] = []
        word_right: list[str] = []
        bracket: tuple[str, str] | None = None
        for f in factors:
            base, power = f, 1
            if f[0] == "pow":
                base, power = f[1], f[2]
            if base[0] == "num":
                if power != 1:
                    coeff *= base[1] ** power
                else:
                    coeff *= base[1]
                continue
            if base[0] == "var":
                target = word_right if bracket else word_left
                target.extend([base[1]] * power)
                continue
            if base[0] == "comm" and power == 1:
                if bracket is not None:
                    return None
                if base[1][0] != "var" or base[2][0] != "var":
                    return None
                bracket = (base[1][1], base[2][1])
                continue
            return None
        coeff %= p
        if coeff == 0:
            continue
        if bracket is None:
            if not word_left:
                return None
            rep.append(PlainTerm(coeff, tuple(word_left)))
        else:
            rep.append(CommTerm(coeff, tuple(word_left),
                                bracket[0], bracket[1], tuple(word_right)))
    return rep if rep else None
