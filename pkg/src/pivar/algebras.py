"""Finite-dimensional algebras given by structure constants.

Coordinates always live in the prime field GF(p).  An algebra declared
over an extension GF(p^k) is stored through scalar restriction (basis
b_i ⊗ t^a), which keeps every evaluation, enumeration and row reduction
an integer computation mod p and avoids subfield embeddings entirely.
The declared field is kept as metadata: the dimension over it is
``dim / k``.

Constructors cover the catalog this package certifies against: the
square-zero commutative truncations C_N, the two-row construction A(U),
the twisted triangular algebras B(F,G,sigma), matrix algebras, and
opposites.  All are non-unital.
"""

from __future__ import annotations

from itertools import combinations
from math import gcd

import numpy as np

from .errors import (
    CapExceeded,
    CharMismatch,
    InvalidSigma,
    MalformedRepresentation,
    MissingAssignment,
    NotAssociative,
    ShapeError,
)
from .fields import FieldSpec, Scalar, frobenius_power, gf_make, subfield_lattice
from .freealg import NcPoly
from .genpoly import GenPoly, GenPool

C_GENERATOR_CAP = 12
MATRIX_SIZE_CAP = 4
DENSE_DIM_CAP = 64
ASSOC_COST_CAP = 2_000_000

# table layout: table[i][j] = ((k, coeff), ...) for nonzero b_i * b_j
Table = dict[int, dict[int, tuple[tuple[int, int], ...]]]


class StructAlgebra:
    """Algebra with GF(p) structure constants; immutable after build."""

    def __init__(self, field: FieldSpec, dim: int, table: Table,
                 labels: list[str], provenance: "Provenance",
                 assoc_checked: bool):
        self.field = field          # declared base field
        self.p = field.p
        self.dim = dim              # dimension of the GF(p) coordinate space
        self.table = table
        self.labels = labels
        self.provenance = provenance
        self.assoc_checked = assoc_checked
        self._dense: np.ndarray | None = None

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, StructAlgebra)
                and other.field == self.field and other.dim == self.dim
                and other.table == self.table)

    def __repr__(self):
        return (f"<{self.provenance.label}: dim {self.dim} over "
                f"GF({self.p}), field {self.field}>")

    @property
    def num_elements(self) -> int:
        return self.p ** self.dim

    def field_dimension(self) -> int:
        return self.dim // self.field.k

    # -- elements -----------------------------------------------------------

    def zero(self) -> "AlgElem":
        return AlgElem(self, (0,) * self.dim)

    def basis_element(self, i: int) -> "AlgElem":
        coords = [0] * self.dim
        coords[i] = 1
        return AlgElem(self, tuple(coords))

    def element(self, coords) -> "AlgElem":
        coords = tuple(c if isinstance(c, GenPoly) else int(c) % self.p
                       for c in coords)
        if len(coords) != self.dim:
            raise ShapeError(f"expected {self.dim} coordinates")
        kinds = {isinstance(c, GenPoly) for c in coords}
        if kinds == {True, False}:
            raise ShapeError("mixed scalar/generic coordinates")
        return AlgElem(self, coords)

    def element_from_code(self, code: int) -> "AlgElem":
        coords = []
        for _ in range(self.dim):
            code, r = divmod(code, self.p)
            coords.append(r)
        return AlgElem(self, tuple(coords))

    # -- multiplication -----------------------------------------------------

    def mul_coords(self, x, y):
        if x and isinstance(x[0], GenPoly) or y and isinstance(y[0], GenPoly):
            return self._mul_generic(x, y)
        p = self.p
        out = [0] * self.dim
        for i, row in self.table.items():
            xi = x[i]
            if not xi:
                continue
            for j, targets in row.items():
                yj = y[j]
                if not yj:
                    continue
                c = xi * yj
                for k, g in targets:
                    out[k] = (out[k] + c * g) % p
        return tuple(out)

    def _mul_generic(self, x, y):
        pool = None
        for c in list(x) + list(y):
            if isinstance(c, GenPoly):
                pool = c.pool
                break
        x = tuple(self._lift(c, pool) for c in x)
        y = tuple(self._lift(c, pool) for c in y)
        out: list[GenPoly] = [pool.zero()] * self.dim
        for i, row in self.table.items():
            xi = x[i]
            if xi.is_zero():
                continue
            for j, targets in row.items():
                yj = y[j]
                if yj.is_zero():
                    continue
                c = xi * yj
                for k, g in targets:
                    out[k] = out[k] + c.scale(g)
        return tuple(out)

    @staticmethod
    def _lift(c, pool: GenPool):
        return c if isinstance(c, GenPoly) else pool.constant(c)

    def dense_gamma(self) -> np.ndarray | None:
        """(dim, dim, dim) structure-constant tensor for small algebras."""
        if self.dim > DENSE_DIM_CAP:
            return None
        if self._dense is None:
            g = np.zeros((self.dim, self.dim, self.dim), dtype=np.int64)
            for i, row in self.table.items():
                for j, targets in row.items():
                    for k, c in targets:
                        g[i, j, k] = c
            self._dense = g
        return self._dense

    def nonzero_pairs(self):
        for i, row in self.table.items():
            for j, targets in row.items():
                yield i, j, targets


class AlgElem:
    """Element of a StructAlgebra; coordinates are ints or GenPoly."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: StructAlgebra, coords: tuple):
        self.algebra = algebra
        self.coords = coords

    def _check(self, other: "AlgElem") -> None:
        if not isinstance(other, AlgElem) or (
                other.algebra is not self.algebra
                and other.algebra != self.algebra):
            raise ShapeError("elements of different algebras")

    def is_generic(self) -> bool:
        return bool(self.coords) and isinstance(self.coords[0], GenPoly)

    def is_zero(self) -> bool:
        if self.is_generic():
            return all(c.is_zero() for c in self.coords)
        return not any(self.coords)

    def __add__(self, other):
        self._check(other)
        p = self.algebra.p
        if self.is_generic() or other.is_generic():
            pool = next(c.pool for c in (self.coords + other.coords)
                        if isinstance(c, GenPoly))
            lift = StructAlgebra._lift
            coords = tuple(lift(a, pool) + lift(b, pool)
                           for a, b in zip(self.coords, other.coords))
        else:
            coords = tuple((a + b) % p
                           for a, b in zip(self.coords, other.coords))
        return AlgElem(self.algebra, coords)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        self._check(other)
        return AlgElem(self.algebra,
                       self.algebra.mul_coords(self.coords, other.coords))

    def scale(self, c: int):
        p = self.algebra.p
        if self.is_generic():
            coords = tuple(g.scale(c) for g in self.coords)
        else:
            coords = tuple((a * c) % p for a in self.coords)
        return AlgElem(self.algebra, coords)

    def __eq__(self, other):
        return (isinstance(other, AlgElem) and other.algebra == self.algebra
                and other.coords == self.coords)

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for c, label in zip(self.coords, self.algebra.labels):
            if isinstance(c, GenPoly):
                if not c.is_zero():
                    parts.append(f"({c!r})*{label}")
            elif c:
                parts.append(label if c == 1 else f"{c}*{label}")
        return " + ".join(parts)


class Provenance:
    """Names the construction an algebra came from, for certificates."""

    def __init__(self, kind: str, label: str, params: tuple = ()):
        self.kind = kind
        self.label = label
        self.params = params

    def __repr__(self):
        return self.label

    def __eq__(self, other):
        return (isinstance(other, Provenance) and other.kind == self.kind
                and other.label == self.label and other.params == self.params)


# ---------------------------------------------------------------------------
# associativity checking
# ---------------------------------------------------------------------------

def _sparse_mul_basis(table: Table, targets, k: int, p: int) -> dict[int, int]:
    """Coordinates of (sum targets) * b_k given the table."""
    acc: dict[int, int] = {}
    for m, c in targets:
        row = table.get(m)
        if not row:
            continue
        for l, g in row.get(k, ()):
            nv = (acc.get(l, 0) + c * g) % p
            if nv:
                acc[l] = nv
            else:
                acc.pop(l, None)
    return acc


def _sparse_basis_mul(table: Table, i: int, targets, p: int) -> dict[int, int]:
    """Coordinates of b_i * (sum targets)."""
    acc: dict[int, int] = {}
    row = table.get(i)
    if not row:
        return acc
    for m, c in targets:
        for l, g in row.get(m, ()):
            nv = (acc.get(l, 0) + c * g) % p
            if nv:
                acc[l] = nv
            else:
                acc.pop(l, None)
    return acc


def check_associativity(table: Table, dim: int, p: int) -> tuple[int, int, int] | None:
    """Return a violating basis triple, or None if associative.

    Walks (b_i b_j) b_k and b_i (b_j b_k) over all triples where either
    side can be nonzero, which covers every possible violation.
    """
    lhs: dict[tuple[int, int, int], dict[int, int]] = {}
    for i, row in table.items():
        for j, targets in row.items():
            for k in range(dim):
                v = _sparse_mul_basis(table, targets, k, p)
                if v:
                    lhs[(i, j, k)] = v
    for j, row in table.items():
        for k, targets in row.items():
            for i in range(dim):
                v = _sparse_basis_mul(table, i, targets, p)
                l = lhs.pop((i, j, k), {})
                if v != l:
                    return (i, j, k)
    if lhs:
        return next(iter(lhs))
    return None


def _table_cost(table: Table, dim: int) -> int:
    pairs = sum(len(row) for row in table.values())
    return pairs * dim


def _build(field: FieldSpec, dim: int, table: Table, labels, provenance,
           trusted: bool) -> StructAlgebra:
    table = {i: {j: tuple(t) for j, t in row.items() if t}
             for i, row in table.items() if row}
    table = {i: row for i, row in table.items() if row}
    cost = _table_cost(table, dim)
    if cost <= ASSOC_COST_CAP:
        bad = check_associativity(table, dim, field.p)
        if bad is not None:
            raise NotAssociative(
                f"associativity fails at basis triple {bad}", bad)
        checked = True
    elif trusted:
        # correct by construction; too large to verify triple by triple
        checked = False
    else:
        raise CapExceeded(
            f"associativity check cost {cost} exceeds {ASSOC_COST_CAP}")
    return StructAlgebra(field, dim, table, list(labels), provenance, checked)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def from_structure_constants(field: FieldSpec, gamma, labels=None,
                             provenance: Provenance | None = None) -> StructAlgebra:
    """Build from an explicit table.

    ``gamma`` is either a mapping (i, j) -> {k: coeff} or a dense nested
    list ``gamma[i][j][k]``.  Associativity is verified on all basis
    triples; the violating triple is reported on failure.
    """
    p = field.p
    table: Table = {}
    if isinstance(gamma, dict):
        dim = 0
        for (i, j), vec in gamma.items():
            dim = max(dim, i + 1, j + 1)
            for k in vec:
                dim = max(dim, k + 1)
        if labels is not None:
            dim = max(dim, len(labels))
        for (i, j), vec in gamma.items():
            targets = tuple((k, c % p) for k, c in sorted(vec.items()) if c % p)
            if targets:
                table.setdefault(i, {})[j] = targets
    else:
        dim = len(gamma)
        for i, plane in enumerate(gamma):
            if len(plane) != dim:
                raise ShapeError("gamma must be dim x dim x dim")
            for j, vec in enumerate(plane):
                if len(vec) != dim:
                    raise ShapeError("gamma must be dim x dim x dim")
                targets = tuple((k, c % p) for k, c in enumerate(vec) if c % p)
                if targets:
                    table.setdefault(i, {})[j] = targets
    if labels is None:
        labels = [f"b{i + 1}" for i in range(dim)]
    if len(labels) != dim:
        raise ShapeError("label count does not match dimension")
    prov = provenance or Provenance("custom", "custom")
    return _build(field, dim, table, labels, prov, trusted=False)


def _extend_scalars(field: FieldSpec, dim: int, table: Table, labels,
                    provenance: Provenance) -> StructAlgebra:
    """Scalar restriction of a 0/1-constant algebra to GF(p).

    Basis becomes b_i ⊗ t^a; products pick up the coordinates of
    t^(a+b) over the power basis of the declared field.
    """
    k = field.k
    if k == 1:
        return _build(field, dim, table, labels, provenance, trusted=True)
    new_dim = dim * k
    tmul: list[list[tuple[tuple[int, int], ...]]] = []
    for a in range(k):
        row = []
        for b in range(k):
            ta = field.from_int(field.p ** a)
            tb = field.from_int(field.p ** b)
            prod = ta * tb
            row.append(tuple((c, v) for c, v in enumerate(prod.coords) if v))
        tmul.append(row)
    new_table: Table = {}
    for i, row in table.items():
        for j, targets in row.items():
            for a in range(k):
                for b in range(k):
                    buck: dict[int, int] = {}
                    for m, g in targets:
                        for c, v in tmul[a][b]:
                            idx = m * k + c
                            buck[idx] = (buck.get(idx, 0) + g * v) % field.p
                    packed = tuple((idx, v) for idx, v in sorted(buck.items())
                                   if v)
                    if packed:
                        new_table.setdefault(i * k + a, {})[j * k + b] = packed
    new_labels = []
    for l in labels:
        for a in range(k):
            if a == 0:
                new_labels.append(l)
            elif a == 1:
                new_labels.append(f"{l}*t")
            else:
                new_labels.append(f"{l}*t^{a}")
    return _build(field, new_dim, new_table, new_labels, provenance,
                  trusted=True)


def make_C(n_generators: int, field: FieldSpec) -> StructAlgebra:
    """Truncation C_N: commutative, square-zero generators c_1..c_N.

    Basis is the nonempty square-free monomials (subsets of generators,
    ordered by size then lexicographically); the product is union when
    disjoint and zero otherwise.
    """
    n = n_generators
    if not 1 <= n <= C_GENERATOR_CAP:
        raise CapExceeded(
            f"generator count must be in [1, {C_GENERATOR_CAP}]")
    subsets: list[tuple[int, ...]] = []
    for size in range(1, n + 1):
        subsets.extend(combinations(range(1, n + 1), size))
    index = {s: i for i, s in enumerate(subsets)}
    table: Table = {}
    for i, s in enumerate(subsets):
        for j, t in enumerate(subsets):
            if set(s) & set(t):
                continue
            k = index[tuple(sorted(s + t))]
            table.setdefault(i, {})[j] = ((k, 1),)
    labels = ["".join(f"c{g}" for g in s) for s in subsets]
    prov = Provenance("C", f"C_{n}", (n,))
    return _extend_scalars(field, len(subsets), table, labels, prov)


def make_A(u: StructAlgebra) -> StructAlgebra:
    """Two-row construction on pairs: (u1,u2)(v1,v2) = (u1 v1, u1 v2).

    Basis order: first the (b_i, 0) block, then the (0, b_i) block, so an
    element with coordinates (x | y) is the pair (x, y).
    """
    d = u.dim
    table: Table = {}
    for i, row in u.table.items():
        for j, targets in row.items():
            table.setdefault(i, {})[j] = targets
            table.setdefault(i, {})[d + j] = tuple(
                (d + k, c) for k, c in targets)
    labels = [f"({l},0)" for l in u.labels] + [f"(0,{l})" for l in u.labels]
    prov = Provenance("A", f"A({u.provenance.label})", (u.provenance,))
    return _build(u.field, 2 * d, table, labels, prov, trusted=True)


def opposite(a: StructAlgebra) -> StructAlgebra:
    """Anti-isomorphic copy: gamma'(i, j) = gamma(j, i)."""
    table: Table = {}
    for i, row in a.table.items():
        for j, targets in row.items():
            table.setdefault(j, {})[i] = targets
    kind = a.provenance
    if kind.kind == "opposite":
        prov = kind.params[0]
    else:
        prov = Provenance("opposite", f"{kind.label}*", (kind,))
    return _build(a.field, a.dim, table, a.labels, prov, trusted=True)


def matrix_algebra(n: int, field: FieldSpec) -> StructAlgebra:
    """Full matrix algebra M_n on the matrix-unit basis e_rc."""
    if n > MATRIX_SIZE_CAP:
        raise CapExceeded(f"matrix size capped at {MATRIX_SIZE_CAP}")
    dim = n * n
    table: Table = {}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    if b == c:
                        i = a * n + b
                        j = c * n + d
                        table.setdefault(i, {})[j] = ((a * n + d, 1),)
    labels = [f"e{r + 1}{c + 1}" for r in range(n) for c in range(n)]
    prov = Provenance("matrix", f"M_{n}({field})", (n,))
    return _extend_scalars(field, dim, table, labels, prov)


def field_algebra(g: FieldSpec) -> StructAlgebra:
    """The field GF(q) as an algebra over its prime field."""
    table: Table = {0: {0: ((0, 1),)}}
    prov = Provenance("field", str(g), (g.p, g.k))
    return _extend_scalars(g, 1, table, ["u"], prov)


def valid_sigmas(f: FieldSpec, g: FieldSpec) -> list[int]:
    """Frobenius exponents j whose fixed field is the unique maximal
    proper subfield of G containing F; empty when no unique one exists."""
    lattice = subfield_lattice(f, g)
    target = lattice.unique_maximal_proper
    if target is None or g.k == f.k:
        return []
    return [j for j in range(1, g.k) if gcd(j, g.k) == target]


def make_B(f: FieldSpec, g: FieldSpec, j: int) -> StructAlgebra:
    """Twisted triangular algebra on pairs (b, c) over the extension G:

        (b1, c1)(b2, c2) = (b1 b2, b1 c2 + c1 sigma(b2)),

    sigma = Frobenius^j, constrained so its fixed field is the unique
    maximal proper subfield of G containing F.  Coordinates are taken
    over the prime field; the dimension over F is 2 [G:F].
    """
    if j not in valid_sigmas(f, g):
        raise InvalidSigma(
            f"j={j} is not a valid twist exponent for {g} over {f}")
    m = g.k
    p = g.p
    table: Table = {}

    def power(a: int) -> Scalar:
        return g.from_int(p ** a) if a else g.one()

    for a in range(m):
        for b in range(m):
            prod = power(a) * power(b)
            slot0 = tuple((c, v) for c, v in enumerate(prod.coords) if v)
            if slot0:
                table.setdefault(a, {})[b] = slot0
                table.setdefault(a, {})[m + b] = tuple(
                    (m + c, v) for c, v in slot0)
            twisted = power(a) * frobenius_power(power(b), j)
            slot1 = tuple((m + c, v) for c, v in enumerate(twisted.coords) if v)
            if slot1:
                table.setdefault(m + a, {})[b] = slot1
    def pw(a: int) -> str:
        return "1" if a == 0 else ("t" if a == 1 else f"t^{a}")

    labels = ([f"({pw(a)},0)" for a in range(m)]
              + [f"(0,{pw(a)})" for a in range(m)])
    prov = Provenance("B", f"B({f},{g},sigma^{j})", (f.k, g.k, j))
    return _build(f, 2 * m, table, labels, prov, trusted=True)


def generic_element(a: StructAlgebra, pool: GenPool, tag: str) -> AlgElem:
    """Element whose coordinates are fresh generic variables."""
    ids = pool.fresh(f"{tag}_", a.dim)
    return AlgElem(a, tuple(pool.var(i) for i in ids))


# ---------------------------------------------------------------------------
# evaluation of free-algebra polynomials
# ---------------------------------------------------------------------------

def evaluate_poly(f: NcPoly, a: StructAlgebra,
                  assignment: dict[str, AlgElem]) -> AlgElem:
    """Evaluate f at the assigned elements.

    Word products run left to right through the structure constants;
    evaluation is a ring homomorphism from the free algebra.
    """
    if f.p != a.p:
        raise CharMismatch(
            f"polynomial over GF({f.p}) evaluated in characteristic {a.p}")
    missing = f.variables() - set(assignment)
    if missing:
        raise MissingAssignment(f"unassigned variables: {sorted(missing)}")
    generic = any(elem.is_generic() for elem in assignment.values())
    pool = None
    if generic:
        for elem in assignment.values():
            if elem.is_generic():
                pool = elem.coords[0].pool
                break
    total = None
    word_cache: dict = {}
    for w, c in f.terms.items():
        if not w:
            raise MalformedRepresentation(
                "the unit word cannot be evaluated in a non-unital algebra")
        val = word_cache.get(w)
        if val is None:
            val = assignment[w[0]].coords
            for letter in w[1:]:
                val = a.mul_coords(val, assignment[letter].coords)
            word_cache[w] = val
        if generic:
            val = tuple(StructAlgebra._lift(v, pool).scale(c) for v in val)
            if total is None:
                total = val
            else:
                total = tuple(x + y for x, y in zip(total, val))
        else:
            if total is None:
                total = tuple((v * c) % a.p for v in val)
            else:
                total = tuple((x + v * c) % a.p for x, v in zip(total, val))
    if total is None:
        return a.zero()
    return AlgElem(a, total)


# ---------------------------------------------------------------------------
# algebra definition files
# ---------------------------------------------------------------------------

def parse_algebra_file(text: str) -> StructAlgebra:
    """Line-oriented algebra format.

    Header ``algebra <name> dim <d> field GF(p[^k])``, then lines
    ``mul i j -> c1 b1 + c2 b2 + ...`` with 1-based basis indices;
    omitted products are zero.  Coefficients are integers taken mod p.
    """
    header = None
    muls: list[tuple[int, int, dict[int, int]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "algebra":
            if len(parts) != 6 or parts[2] != "dim" or parts[4] != "field":
                raise ShapeError(f"line {lineno}: bad header")
            header = (parts[1], int(parts[3]), _parse_field_name(parts[5]))
        elif parts[0] == "mul":
            if header is None:
                raise ShapeError(f"line {lineno}: mul before header")
            try:
                arrow = parts.index("->")
            except ValueError:
                raise ShapeError(f"line {lineno}: missing '->'") from None
            if arrow != 3:
                raise ShapeError(f"line {lineno}: expected 'mul i j ->'")
            i, j = int(parts[1]) - 1, int(parts[2]) - 1
            vec = _parse_combination(" ".join(parts[4:]), lineno)
            muls.append((i, j, vec))
        else:
            raise ShapeError(f"line {lineno}: unknown directive {parts[0]!r}")
    if header is None:
        raise ShapeError("missing algebra header")
    name, dim, field = header
    gamma: dict[tuple[int, int], dict[int, int]] = {}
    for i, j, vec in muls:
        if not (0 <= i < dim and 0 <= j < dim) or any(
                not 0 <= k < dim for k in vec):
            raise ShapeError(f"basis index out of range in mul {i+1} {j+1}")
        gamma[(i, j)] = vec
    labels = [f"b{i + 1}" for i in range(dim)]
    prov = Provenance("custom", name)
    return from_structure_constants(field, gamma, labels, prov)


def _parse_field_name(token: str) -> FieldSpec:
    token = token.strip()
    if not (token.startswith("GF(") and token.endswith(")")):
        raise ShapeError(f"bad field literal {token!r}")
    body = token[3:-1]
    if "^" in body:
        p_s, k_s = body.split("^", 1)
        return gf_make(int(p_s), int(k_s))
    return gf_make(int(body), 1)


def _parse_combination(text: str, lineno: int) -> dict[int, int]:
    vec: dict[int, int] = {}
    if text.strip() in ("0", ""):
        return vec
    for chunk in text.replace("-", "+-").split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        sign = 1
        if chunk.startswith("-"):
            sign = -1
            chunk = chunk[1:].strip()
        bits = chunk.replace("*", " ").split()
        if len(bits) == 1:
            coeff, basis = 1, bits[0]
        elif len(bits) == 2:
            coeff, basis = int(bits[0]), bits[1]
        else:
            raise ShapeError(f"line {lineno}: bad term {chunk!r}")
        if not basis.startswith("b"):
            raise ShapeError(f"line {lineno}: bad basis name {basis!r}")
        k = int(basis[1:]) - 1
        vec[k] = vec.get(k, 0) + sign * coeff
    return vec
