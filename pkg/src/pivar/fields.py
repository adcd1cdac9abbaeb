"""Exact arithmetic in GF(p) and GF(p^k).

An element of GF(p^k) is a residue modulo a fixed monic irreducible
polynomial of degree k over GF(p), stored as a coefficient tuple of
length k (little-endian).  The modulus is always the canonical one:
the monic irreducible polynomial of degree k whose non-leading
coefficients, read as a base-p integer, are smallest.  This makes every
Scalar encoding reproducible across runs and platforms.

Frobenius maps x -> x^(p^j) and the divisor lattice of subfields are
provided for the twisted triangular algebras built on field extensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import (
    CapExceeded,
    DegreeOutOfRange,
    DivisionByZero,
    FieldMismatch,
    NotAnExtension,
    NotPrime,
)

SIZE_CAP = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# dense polynomial helpers over GF(p); coefficient lists are little-endian
# ---------------------------------------------------------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_rem(a: list[int], mod: list[int], p: int) -> list[int]:
    # mod is monic
    a = list(a)
    dm = len(mod) - 1
    while len(a) > dm:
        c = a[-1]
        if c:
            off = len(a) - 1 - dm
            for i, mi in enumerate(mod):
                a[off + i] = (a[off + i] - c * mi) % p
        a.pop()
    return _trim(a)


def _poly_mulmod(a, b, mod, p):
    return _poly_rem(_poly_mul(a, b, p), mod, p)


def _poly_powmod(base, e: int, mod, p):
    result = [1]
    base = _poly_rem(list(base), mod, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        r = list(a)
        db = len(b) - 1
        while len(r) - 1 >= db and r:
            c = (r[-1] * inv) % p
            if c:
                off = len(r) - 1 - db
                for i, bi in enumerate(b):
                    r[off + i] = (r[off + i] - c * bi) % p
            r.pop()
            _trim(r)
        a, b = b, r
    return a


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _is_irreducible(f: list[int], p: int) -> bool:
    """Rabin test for a monic polynomial of degree >= 1 over GF(p)."""
    k = len(f) - 1
    if k == 1:
        return True
    x = [0, 1]
    xq = _poly_powmod(x, p ** k, f, p)
    if _poly_sub(xq, x, p):
        return False
    for ell in _prime_divisors(k):
        d = k // ell
        xe = _poly_powmod(x, p ** d, f, p)
        g = _poly_sub(xe, x, p)
        if len(_poly_gcd(g, f, p)) - 1 != 0:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


# ---------------------------------------------------------------------------
# field descriptor and elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """Descriptor of GF(p^k): characteristic, degree and canonical modulus.

    ``modulus`` has length k+1, is monic, and is little-endian.
    """

    p: int
    k: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p ** self.k

    def zero(self) -> "Scalar":
        return Scalar(self, (0,) * self.k)

    def one(self) -> "Scalar":
        return Scalar(self, (1,) + (0,) * (self.k - 1))

    def element(self, coords) -> "Scalar":
        coords = tuple(int(c) % self.p for c in coords)
        if len(coords) != self.k:
            raise FieldMismatch(
                f"expected {self.k} coordinates, got {len(coords)}")
        return Scalar(self, coords)

    def from_int(self, n: int) -> "Scalar":
        """Integer in [0, q) decoded base p, least significant first."""
        n %= self.q
        coords = []
        for _ in range(self.k):
            n, r = divmod(n, self.p)
            coords.append(r)
        return Scalar(self, tuple(coords))

    def elements(self) -> Iterator["Scalar"]:
        for n in range(self.q):
            yield self.from_int(n)

    def __str__(self) -> str:
        return f"GF({self.p})" if self.k == 1 else f"GF({self.p}^{self.k})"


class Scalar:
    """An element of GF(p^k), immutable."""

    __slots__ = ("field", "coords")

    def __init__(self, field: FieldSpec, coords: tuple[int, ...]):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, *a):
        raise AttributeError("Scalar is immutable")

    def _check(self, other: "Scalar") -> None:
        if not isinstance(other, Scalar) or other.field != self.field:
            raise FieldMismatch("operands belong to different fields")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other):
        self._check(other)
        p = self.field.p
        return Scalar(self.field, tuple(
            (a + b) % p for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        p = self.field.p
        return Scalar(self.field, tuple(
            (a - b) % p for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        p = self.field.p
        return Scalar(self.field, tuple((-a) % p for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.field.p
            return Scalar(self.field,
                          tuple((a * other) % p for a in self.coords))
        self._check(other)
        f = self.field
        prod = _poly_mulmod(list(self.coords), list(other.coords),
                            list(f.modulus), f.p)
        prod += [0] * (f.k - len(prod))
        return Scalar(f, tuple(prod))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return self ** (self.field.q - 2)

    def __pow__(self, e: int) -> "Scalar":
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def to_int(self) -> int:
        n = 0
        for c in reversed(self.coords):
            n = n * self.field.p + c
        return n

    def __eq__(self, other):
        return (isinstance(other, Scalar) and other.field == self.field
                and other.coords == self.coords)

    def __hash__(self):
        return hash((self.field, self.coords))

    def __repr__(self):
        if self.field.k == 1:
            return str(self.coords[0])
        names = {0: "1", 1: "t"}
        parts = []
        for i, c in enumerate(self.coords):
            if c == 0:
                continue
            mono = names.get(i, f"t^{i}")
            if i == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"


@lru_cache(maxsize=None)
def gf_make(p: int, k: int, cap: int = SIZE_CAP) -> FieldSpec:
    """Build the canonical GF(p^k) descriptor.

    The modulus is the first monic irreducible of degree k in the base-p
    encoding of the non-leading coefficients, so the result is
    deterministic.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise DegreeOutOfRange(f"extension degree must be >= 1, got {k}")
    if p ** k > cap:
        raise CapExceeded(f"p^k = {p ** k} exceeds the cap {cap}")
    for m in range(p ** k):
        coeffs = []
        n = m
        for _ in range(k):
            n, r = divmod(n, p)
            coeffs.append(r)
        f = coeffs + [1]
        if _is_irreducible(f, p):
            return FieldSpec(p, k, tuple(f))
    raise DegreeOutOfRange(f"no irreducible of degree {k} found")  # unreachable


def frobenius_power(a: Scalar, j: int) -> Scalar:
    """a^(p^j); the j-th power of the Frobenius automorphism."""
    f = a.field
    j %= f.k
    return a ** (f.p ** j)


@dataclass(frozen=True)
class SubfieldLattice:
    """Subfield degrees of G that contain F, as divisors of deg(G)."""

    degrees: tuple[int, ...]
    maximal_proper: tuple[int, ...]

    @property
    def unique_maximal_proper(self) -> int | None:
        if len(self.maximal_proper) == 1:
            return self.maximal_proper[0]
        return None


def subfield_lattice(F: FieldSpec, G: FieldSpec) -> SubfieldLattice:
    """All subfields of G containing F, reported by degree over GF(p).

    Maximal proper subfields are those of degree deg(G)/ell for a prime
    ell dividing deg(G), provided they still contain F.
    """
    if F.p != G.p or G.k % F.k != 0:
        raise NotAnExtension(f"{G} is not an extension of {F}")
    degs = tuple(d for d in divisors(G.k) if d % F.k == 0)
    maximal = tuple(sorted(G.k // ell for ell in _prime_divisors(G.k)
                           if (G.k // ell) % F.k == 0))
    return SubfieldLattice(degs, maximal)
