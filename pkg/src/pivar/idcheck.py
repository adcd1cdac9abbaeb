"""Deciding identities of structure-constant algebras.

Two complementary checkers:

* exhaustive: enumerate element tuples (numpy-batched through the dense
  structure tensor when the algebra is small enough).  Sound "yes" only
  after full enumeration; running into the budget is reported as its own
  verdict state, never converted into "yes".
* generic: evaluate at elements with fresh generic coordinates.  Under
  infinite-field semantics an identity holds iff the coordinate
  polynomials are formally zero; under finite semantics iff they vanish
  after reduction by the coordinate field equations t^p = t.  "No"
  verdicts are specialized to a concrete witness point whenever one
  exists.

Structural tests: the lower Lie chain L_1 = A, L_{k+1} = [L_k, A] by row
reduction (Lie nilpotency class = first vanishing step), and the Engel
property via nilpotency of every adjoint map ad(y).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from .algebras import AlgElem, StructAlgebra, evaluate_poly, generic_element
from .errors import CharMismatch, MalformedRepresentation
from .fields import gf_make
from .freealg import NcPoly
from .genpoly import GenPoly, GenPool, find_nonvanishing_point
from .gfmat import RowSpace, matrix_power_is_zero

DEFAULT_BUDGET = 10 ** 6
_CHUNK = 4096

SEM_FINITE = "finite-q"
SEM_INFINITE = "infinite-char-p"


@dataclass(frozen=True)
class IdentitySystem:
    """A set of polynomials defining a variety; uniform characteristic."""

    polys: tuple[NcPoly, ...]

    def __post_init__(self):
        if not self.polys:
            raise MalformedRepresentation("empty identity system")
        chars = {f.p for f in self.polys}
        if len(chars) != 1:
            raise CharMismatch(f"mixed characteristics {sorted(chars)}")

    @property
    def p(self) -> int:
        return self.polys[0].p

    def max_degree(self) -> int:
        return max(f.total_degree() for f in self.polys)

    def __repr__(self):
        return "{" + ", ".join(repr(f) for f in self.polys) + "}"


@dataclass(frozen=True)
class Witness:
    """Concrete assignment with a nonzero value; self-validating."""

    assignment: dict[str, AlgElem]
    nonzero_coords: tuple[int, ...]

    def describe(self, algebra: StructAlgebra) -> str:
        parts = [f"{v}={elem!r}" for v, elem in sorted(self.assignment.items())]
        return ", ".join(parts)


@dataclass(frozen=True)
class FormalWitness:
    """A formally nonzero coordinate; conclusive for infinite fields."""

    coordinate: int
    poly: GenPoly


@dataclass(frozen=True)
class EngelWitness:
    """ad(y)^power applied to x stays nonzero, so ad(y) is not nilpotent."""

    y: AlgElem
    x: AlgElem
    power: int


@dataclass
class CheckVerdict:
    holds: str                      # "yes" | "no" | "budget_exceeded"
    semantics: str
    evaluations: int = 0
    witness: object = None

    @property
    def is_yes(self) -> bool:
        return self.holds == "yes"

    @property
    def is_no(self) -> bool:
        return self.holds == "no"

    @property
    def definite(self) -> bool:
        return self.holds in ("yes", "no")


# ---------------------------------------------------------------------------
# element enumeration, smallest support first
# ---------------------------------------------------------------------------

def coords_by_weight(dim: int, p: int):
    """All coordinate vectors ordered by support size then position."""
    yield (0,) * dim
    for weight in range(1, dim + 1):
        for positions in combinations(range(dim), weight):
            for values in product(range(1, p), repeat=weight):
                vec = [0] * dim
                for pos, val in zip(positions, values):
                    vec[pos] = val
                yield tuple(vec)


def _element_table(a: StructAlgebra, count: int) -> np.ndarray:
    dtype = np.int16 if a.p < 256 else np.int64
    table = np.zeros((count, a.dim), dtype=dtype)
    gen = coords_by_weight(a.dim, a.p)
    for i in range(count):
        table[i] = next(gen)
    return table


def _batch_eval(f: NcPoly, a: StructAlgebra, gamma: np.ndarray,
                columns: dict[str, np.ndarray]) -> np.ndarray:
    p = a.p
    out = np.zeros((next(iter(columns.values())).shape[0], a.dim),
                   dtype=np.int64)
    for w, c in f.terms.items():
        cur = columns[w[0]].astype(np.int64)
        for letter in w[1:]:
            nxt = columns[letter].astype(np.int64)
            cur = np.einsum("bi,bj,ijk->bk", cur, nxt, gamma) % p
        out = (out + c * cur) % p
    return out


def is_identity_exhaustive(a: StructAlgebra, f: NcPoly,
                           budget: int = DEFAULT_BUDGET,
                           multilinear_shortcut: bool = False) -> CheckVerdict:
    """Try all assignments of f's variables, basis-biased order first.

    With ``multilinear_shortcut`` and f multilinear in every variable,
    only basis tuples are enumerated: vanishing there already implies
    vanishing everywhere.  The shortcut is never applied to other
    polynomials; finite-field homogeneity reductions are invalid in
    characteristic p.
    """
    if f.p != a.p:
        raise CharMismatch("characteristic mismatch")
    if f.is_zero():
        return CheckVerdict("yes", SEM_FINITE, 0)
    variables = sorted(f.variables())
    if not variables:
        raise MalformedRepresentation("cannot test a constant polynomial")
    v = len(variables)
    basis_only = multilinear_shortcut and f.is_multilinear()
    n_elems = a.dim if basis_only else a.num_elements
    total = n_elems ** v
    limit = min(total, budget)
    n_mat = min(n_elems, limit)
    gamma = a.dense_gamma()
    if (a.p - 1) ** 3 * a.dim * a.dim >= 2 ** 62:
        gamma = None       # einsum accumulation could overflow int64
    if gamma is not None:
        table = (np.eye(a.dim, dtype=np.int16) if basis_only
                 else _element_table(a, n_mat))
        table = table[:n_mat]
        done = 0
        while done < limit:
            stop = min(done + _CHUNK, limit)
            idx = np.arange(done, stop, dtype=np.int64)
            columns = {}
            for m, var in enumerate(variables):
                divisor = n_elems ** (v - 1 - m)
                if divisor > stop:
                    digits = np.zeros(len(idx), dtype=np.int64)
                else:
                    digits = (idx // divisor) % n_elems
                columns[var] = table[digits]
            values = _batch_eval(f, a, gamma, columns)
            bad = np.nonzero(values.any(axis=1))[0]
            if bad.size:
                b = int(bad[0])
                assignment = {var: AlgElem(a, tuple(int(x) for x in columns[var][b]))
                              for var in variables}
                nz = tuple(int(k) for k in np.nonzero(values[b])[0])
                return CheckVerdict("no", SEM_FINITE, done + b + 1,
                                    Witness(assignment, nz))
            done = stop
    else:
        if basis_only:
            elems = [tuple(int(i == j) for j in range(a.dim))
                     for i in range(n_mat)]
        else:
            gen = coords_by_weight(a.dim, a.p)
            elems = [next(gen) for _ in range(n_mat)]
        done = 0
        for combo in product(elems, repeat=v):
            if done >= limit:
                break
            assignment = {var: AlgElem(a, combo[m])
                          for m, var in enumerate(variables)}
            value = evaluate_poly(f, a, assignment)
            done += 1
            if not value.is_zero():
                nz = tuple(k for k, c in enumerate(value.coords) if c)
                return CheckVerdict("no", SEM_FINITE, done,
                                    Witness(assignment, nz))
    if limit < total:
        return CheckVerdict("budget_exceeded", SEM_FINITE, limit)
    return CheckVerdict("yes", SEM_FINITE, limit)


# ---------------------------------------------------------------------------
# generic checking
# ---------------------------------------------------------------------------

def is_identity_generic(a: StructAlgebra, f: NcPoly, semantics: str,
                        budget: int = DEFAULT_BUDGET) -> CheckVerdict:
    """Evaluate f at independent generic elements.

    ``semantics`` is "infinite-char-p" (formal zero test; the identity
    holds in A tensored with every infinite field of characteristic p) or
    "finite-q" (zero after coordinate field-equation reduction; the
    identity holds for all elements of A itself).
    """
    if semantics not in (SEM_FINITE, SEM_INFINITE):
        raise ValueError(f"unknown semantics {semantics!r}")
    if f.p != a.p:
        raise CharMismatch("characteristic mismatch")
    if f.is_zero():
        return CheckVerdict("yes", semantics, 0)
    variables = sorted(f.variables())
    if not variables:
        raise MalformedRepresentation("cannot test a constant polynomial")
    pool = GenPool(gf_make(a.p, 1))
    blocks: dict[str, tuple[int, ...]] = {}
    assignment: dict[str, AlgElem] = {}
    for var in variables:
        start = len(pool)
        assignment[var] = generic_element(a, pool, var)
        blocks[var] = tuple(range(start, start + a.dim))
    value = evaluate_poly(f, a, assignment)
    coords = value.coords
    if semantics == SEM_FINITE:
        tested = [c.reduce_mod_field_equations(a.p) for c in coords]
    else:
        tested = list(coords)
    nonzero = [k for k, c in enumerate(tested) if not c.is_zero()]
    if not nonzero:
        return CheckVerdict("yes", semantics, 1)
    k = nonzero[0]
    point = find_nonvanishing_point(coords[k], a.p)
    if point is None:
        # formally nonzero but zero at every GF(p) point; only the
        # infinite semantics can reach here
        return CheckVerdict("no", semantics, 1, FormalWitness(k, coords[k]))
    concrete: dict[str, AlgElem] = {}
    zero = pool.field.zero()
    for var in variables:
        vec = tuple(point.get(i, zero).coords[0] for i in blocks[var])
        concrete[var] = AlgElem(a, vec)
    check = evaluate_poly(f, a, concrete)
    nz = tuple(i for i, c in enumerate(check.coords) if c)
    if not nz:  # pragma: no cover - specialization is nonzero by construction
        return CheckVerdict("no", semantics, 1, FormalWitness(k, coords[k]))
    return CheckVerdict("no", semantics, 2, Witness(concrete, nz))


# ---------------------------------------------------------------------------
# systems
# ---------------------------------------------------------------------------

@dataclass
class SystemVerdict:
    holds: str
    semantics: str
    evaluations: int
    failing_index: int | None = None
    verdicts: list[CheckVerdict] = field(default_factory=list)

    @property
    def is_yes(self) -> bool:
        return self.holds == "yes"

    @property
    def definite(self) -> bool:
        return self.holds in ("yes", "no")

    @property
    def witness(self):
        if self.failing_index is None:
            return None
        return self.verdicts[self.failing_index].witness


def satisfies_system(a: StructAlgebra, system: IdentitySystem,
                     semantics: str,
                     budget: int = DEFAULT_BUDGET) -> SystemVerdict:
    """Conjunction over the system; first failing polynomial reported.

    Finite semantics uses full enumeration when the assignment space fits
    the budget and the generic checker otherwise; infinite semantics is
    always generic.
    """
    if system.p != a.p:
        raise CharMismatch("characteristic mismatch")
    verdicts: list[CheckVerdict] = []
    evaluations = 0
    exceeded = None
    for idx, poly in enumerate(system.polys):
        if semantics == SEM_INFINITE:
            verdict = is_identity_generic(a, poly, SEM_INFINITE, budget)
        else:
            v = max(len(poly.variables()), 1)
            if a.num_elements ** v <= budget:
                verdict = is_identity_exhaustive(a, poly, budget)
            else:
                verdict = is_identity_generic(a, poly, SEM_FINITE, budget)
        verdicts.append(verdict)
        evaluations += verdict.evaluations
        if verdict.is_no:
            return SystemVerdict("no", semantics, evaluations, idx, verdicts)
        if verdict.holds == "budget_exceeded" and exceeded is None:
            exceeded = idx
    if exceeded is not None:
        return SystemVerdict("budget_exceeded", semantics, evaluations,
                             None, verdicts)
    return SystemVerdict("yes", semantics, evaluations, None, verdicts)


# ---------------------------------------------------------------------------
# Lie chain and Engel condition
# ---------------------------------------------------------------------------

@dataclass
class LieNilpotency:
    chain: list[int]
    nil_class: int | None            # first n with L_n = 0, if any
    stable_basis: np.ndarray | None  # basis of the stabilized subspace

    @property
    def nilpotent(self) -> bool:
        return self.nil_class is not None


def lie_lower_chain(a: StructAlgebra) -> list[int]:
    return analyze_lie_chain(a).chain


def is_lie_nilpotent(a: StructAlgebra) -> LieNilpotency:
    return analyze_lie_chain(a)


def analyze_lie_chain(a: StructAlgebra) -> LieNilpotency:
    """Dims of L_1 = A, L_{k+1} = span[L_k, A] until zero or stable."""
    dim, p = a.dim, a.p
    basis_rows = [tuple(int(x) for x in row) for row in np.eye(dim, dtype=int)]
    chain = [dim]
    current = basis_rows
    while True:
        space = RowSpace(p, dim)
        for row in current:
            for i in range(dim):
                e = basis_rows[i]
                bracket = tuple(
                    (x - y) % p
                    for x, y in zip(a.mul_coords(row, e), a.mul_coords(e, row)))
                if any(bracket):
                    space.insert(bracket)
        chain.append(space.dim)
        if space.dim == 0:
            return LieNilpotency(chain, len(chain), None)
        if space.dim == chain[-2]:
            return LieNilpotency(chain, None, space.basis_matrix())
        current = [tuple(int(x) for x in r) for r in space.basis_matrix()]


def adjoint_matrix(a: StructAlgebra, y) -> np.ndarray:
    """Matrix of ad(y): x -> [x, y] on coordinate columns."""
    coords = y.coords if isinstance(y, AlgElem) else y
    dim, p = a.dim, a.p
    mat = np.zeros((dim, dim), dtype=np.int64)
    for i in range(dim):
        e = [0] * dim
        e[i] = 1
        e = tuple(e)
        bracket = [(x - z) % p for x, z in
                   zip(a.mul_coords(e, coords), a.mul_coords(coords, e))]
        mat[:, i] = bracket
    return mat


def is_engel(a: StructAlgebra, budget: int = DEFAULT_BUDGET) -> CheckVerdict:
    """Engel iff ad(y) is nilpotent for every y; enumerate y by weight.

    A definite "yes" needs the full sweep; a failing y is returned with a
    basis vector x whose iterated bracket with y stays nonzero.
    """
    n_elems = a.num_elements
    limit = min(n_elems, budget)
    count = 0
    for coords in coords_by_weight(a.dim, a.p):
        if count >= limit:
            break
        count += 1
        mat = adjoint_matrix(a, coords)
        if not mat.any():
            continue
        if matrix_power_is_zero(mat, a.p, a.dim):
            continue
        # find the surviving power and a basis witness
        power = 1
        m = mat % a.p
        while power < a.dim:
            m = (m @ m) % a.p
            power *= 2
        col = int(np.nonzero(m.any(axis=0))[0][0])
        return CheckVerdict(
            "no", "engel-adjoint", count,
            EngelWitness(AlgElem(a, coords), a.basis_element(col), power))
    if limit < n_elems:
        return CheckVerdict("budget_exceeded", "engel-adjoint", limit)
    return CheckVerdict("yes", "engel-adjoint", limit)


# ---------------------------------------------------------------------------
# witness replay
# ---------------------------------------------------------------------------

def recheck_witness(a: StructAlgebra, f: NcPoly, witness) -> bool:
    """Re-evaluate a "no" witness; True when it is still a counterexample."""
    if isinstance(witness, Witness):
        value = evaluate_poly(f, a, witness.assignment)
        return not value.is_zero()
    if isinstance(witness, EngelWitness):
        cur = witness.x
        for _ in range(witness.power):
            cur = cur * witness.y - witness.y * cur
        return not cur.is_zero()
    if isinstance(witness, FormalWitness):
        return not witness.poly.is_zero()
    return False
