"""Commutative polynomials in generic scalars over GF(p^k).

These carry "for all field elements" semantics: an element of an algebra
with unknown coordinates gets one generic variable per coordinate, and a
polynomial identity holds generically iff the resulting coordinate
polynomials vanish.  Two zero tests are supported:

* formal zero (sound for every infinite field of the characteristic);
* zero after reducing exponents by t^q = t, which holds iff the
  polynomial vanishes at every point of GF(q)^n.

Variables come from a :class:`GenPool`; arithmetic across pools is
refused so independently drawn generic elements cannot be confused.
"""

from __future__ import annotations

from itertools import product

from .errors import PoolExhausted, PoolMismatch
from .fields import FieldSpec, Scalar

POOL_CAP = 1_000_000

# a monomial is a sorted tuple of (variable index, exponent>0) pairs
Monomial = tuple[tuple[int, int], ...]


class GenPool:
    """A pool of named generic variables over one field."""

    def __init__(self, field: FieldSpec, cap: int = POOL_CAP):
        self.field = field
        self.cap = cap
        self._names: list[str] = []

    def fresh(self, prefix: str, count: int) -> tuple[int, ...]:
        if len(self._names) + count > self.cap:
            raise PoolExhausted(
                f"pool cap {self.cap} cannot supply {count} more variables")
        start = len(self._names)
        self._names.extend(f"{prefix}{i}" for i in range(count))
        return tuple(range(start, start + count))

    def name(self, index: int) -> str:
        return self._names[index]

    def __len__(self) -> int:
        return len(self._names)

    def var(self, index: int) -> "GenPoly":
        return GenPoly(self, {((index, 1),): self.field.one()})

    def constant(self, c: Scalar | int) -> "GenPoly":
        if isinstance(c, int):
            c = self.field.one() * c
        if c.is_zero():
            return GenPoly(self, {})
        return GenPoly(self, {(): c})

    def zero(self) -> "GenPoly":
        return GenPoly(self, {})


class GenPoly:
    """Canonical-form commutative polynomial with Scalar coefficients."""

    __slots__ = ("pool", "terms")

    def __init__(self, pool: GenPool, terms: dict[Monomial, Scalar]):
        self.pool = pool
        self.terms = terms

    # -- helpers ------------------------------------------------------

    def _check(self, other: "GenPoly") -> None:
        if not isinstance(other, GenPoly) or other.pool is not self.pool:
            raise PoolMismatch("operands drawn from different pools")

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[int]:
        out: set[int] = set()
        for mono in self.terms:
            out.update(v for v, _ in mono)
        return out

    def __eq__(self, other):
        return (isinstance(other, GenPoly) and other.pool is self.pool
                and other.terms == self.terms)

    def __hash__(self):
        return hash((id(self.pool), frozenset(self.terms.items())))

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "GenPoly") -> "GenPoly":
        self._check(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            acc = terms.get(mono)
            s = c if acc is None else acc + c
            if s.is_zero():
                terms.pop(mono, None)
            else:
                terms[mono] = s
        return GenPoly(self.pool, terms)

    def __sub__(self, other: "GenPoly") -> "GenPoly":
        return self + (-other)

    def __neg__(self) -> "GenPoly":
        return GenPoly(self.pool, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "GenPoly") -> "GenPoly":
        self._check(other)
        terms: dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c = c1 * c2
                if c.is_zero():
                    continue
                mono = _merge_monomials(m1, m2)
                acc = terms.get(mono)
                s = c if acc is None else acc + c
                if s.is_zero():
                    terms.pop(mono, None)
                else:
                    terms[mono] = s
        return GenPoly(self.pool, terms)

    def scale(self, c: Scalar | int) -> "GenPoly":
        if isinstance(c, int):
            c = self.pool.field.one() * c
        if c.is_zero():
            return GenPoly(self.pool, {})
        return GenPoly(self.pool, {m: v * c for m, v in self.terms.items()})

    # -- semantics ------------------------------------------------------

    def reduce_mod_field_equations(self, q: int) -> "GenPoly":
        """Apply t^q = t to every variable: exponent e >= q becomes
        ((e-1) mod (q-1)) + 1.  Zero exponents stay untouched, so the
        result vanishes identically iff self vanishes on all of GF(q)^n.
        """
        terms: dict[Monomial, Scalar] = {}
        for mono, c in self.terms.items():
            red = tuple(
                (v, e if e < q else ((e - 1) % (q - 1)) + 1)
                for v, e in mono)
            acc = terms.get(red)
            s = c if acc is None else acc + c
            if s.is_zero():
                terms.pop(red, None)
            else:
                terms[red] = s
        return GenPoly(self.pool, terms)

    def substitute_var(self, index: int, value: Scalar) -> "GenPoly":
        """Partially evaluate one variable at a field element."""
        terms: dict[Monomial, Scalar] = {}
        for mono, c in self.terms.items():
            rest = []
            for v, e in mono:
                if v == index:
                    c = c * (value ** e)
                else:
                    rest.append((v, e))
            if c.is_zero():
                continue
            key = tuple(rest)
            acc = terms.get(key)
            s = c if acc is None else acc + c
            if s.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = s
        return GenPoly(self.pool, terms)

    def evaluate(self, assignment: dict[int, Scalar]) -> Scalar:
        field = self.pool.field
        total = field.zero()
        for mono, c in self.terms.items():
            val = c
            for v, e in mono:
                val = val * (assignment[v] ** e)
            total = total + val
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=_mono_sort_key):
            c = self.terms[mono]
            factors = []
            for v, e in mono:
                nm = self.pool.name(v)
                factors.append(nm if e == 1 else f"{nm}^{e}")
            body = "*".join(factors)
            cs = repr(c)
            if not body:
                parts.append(cs)
            elif cs == "1":
                parts.append(body)
            else:
                parts.append(f"({cs})*{body}" if "+" in cs else f"{cs}*{body}")
        return " + ".join(parts)


def _merge_monomials(m1: Monomial, m2: Monomial) -> Monomial:
    merged = dict(m1)
    for v, e in m2:
        merged[v] = merged.get(v, 0) + e
    return tuple(sorted(merged.items()))


def _mono_sort_key(mono: Monomial):
    return (sum(e for _, e in mono), mono)


def generic_poly_arith(u: GenPoly, v: GenPoly, op: str,
                       reduce_q: int | None = None) -> GenPoly:
    """Functional entry point mirroring the operator API.

    ``op`` is ``"add"`` or ``"mul"``; when ``reduce_q`` is given the
    result is reduced by the field equations of GF(reduce_q).
    """
    if op == "add":
        out = u + v
    elif op == "mul":
        out = u * v
    else:
        raise ValueError(f"unknown op {op!r}")
    if reduce_q is not None:
        out = out.reduce_mod_field_equations(reduce_q)
    return out


def find_nonvanishing_point(poly: GenPoly,
                            q: int) -> dict[int, Scalar] | None:
    """A point of GF(q)^n where ``poly`` is nonzero, or None.

    Works by per-variable specialization: if the reduction of ``poly``
    modulo the field equations is nonzero, at least one specialization of
    the first variable stays nonzero after reduction, so the search never
    backtracks.  All variables of the polynomial are assigned in the
    returned dictionary (absent ones get 0).
    """
    field = poly.pool.field
    if field.q != q:
        raise PoolMismatch("point search must use the pool's own field")
    reduced = poly.reduce_mod_field_equations(q)
    if reduced.is_zero():
        return None
    assignment: dict[int, Scalar] = {}
    for v in sorted(poly.variables()):
        assignment[v] = field.zero()
    current = reduced
    for v in sorted(reduced.variables()):
        for candidate in field.elements():
            nxt = current.substitute_var(v, candidate)
            if not nxt.reduce_mod_field_equations(q).is_zero():
                assignment[v] = candidate
                current = nxt
                break
        else:  # pragma: no cover - impossible by the reduction property
            return None
    # fully specialized: remaining polynomial is a nonzero constant
    return assignment


def exhaustive_vanishes(poly: GenPoly, q: int) -> bool:
    """Brute-force oracle: does ``poly`` vanish on all of GF(q)^n?"""
    field = poly.pool.field
    vs = sorted(poly.variables())
    pts = list(field.elements())
    for combo in product(pts, repeat=len(vs)):
        if not poly.evaluate(dict(zip(vs, combo))).is_zero():
            return False
    return True
