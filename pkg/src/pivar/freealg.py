"""The free associative algebra over GF(p).

Noncommutative polynomials are term maps word -> coefficient with words
stored as tuples of variable names.  Coefficients always live in the
prime field: every statement downstream is a positive-characteristic
identity, so there is no integer or rational mode.

Besides ring arithmetic this module builds the left-normed Lie words
W_n, the bounded Engel polynomials in recursive and closed (binomial)
form, substitution endomorphisms, multihomogeneous decomposition, full
linearization, and the S/D degree-set bookkeeping for commutator-monomial
representations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BadArity,
    CharMismatch,
    MalformedRepresentation,
    NotHomogeneous,
)

Word = tuple[str, ...]

LIE_WORD_CAP = 12


def _binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


class NcPoly:
    """Noncommutative polynomial; immutable once constructed."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: dict[Word, int] | None = None):
        clean: dict[Word, int] = {}
        if terms:
            for w, c in terms.items():
                c %= p
                if c:
                    clean[tuple(w)] = c
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("NcPoly is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> "NcPoly":
        return cls(p, {})

    @classmethod
    def var(cls, name: str, p: int) -> "NcPoly":
        return cls(p, {(name,): 1})

    @classmethod
    def word(cls, letters, p: int, coeff: int = 1) -> "NcPoly":
        return cls(p, {tuple(letters): coeff})

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[str]:
        out: set[str] = set()
        for w in self.terms:
            out.update(w)
        return out

    def total_degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def is_multilinear(self) -> bool:
        """Every word uses every variable of the polynomial exactly once."""
        vs = self.variables()
        for w in self.terms:
            if len(w) != len(vs) or set(w) != vs:
                return False
        return True

    def __eq__(self, other):
        return (isinstance(other, NcPoly) and other.p == self.p
                and other.terms == self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "NcPoly") -> None:
        if not isinstance(other, NcPoly) or other.p != self.p:
            raise CharMismatch("operands have different characteristic")

    def __add__(self, other: "NcPoly") -> "NcPoly":
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return NcPoly(self.p, terms)

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) - c
        return NcPoly(self.p, terms)

    def __neg__(self) -> "NcPoly":
        return NcPoly(self.p, {w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        terms: dict[Word, int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                terms[w] = terms.get(w, 0) + c1 * c2
        return NcPoly(self.p, terms)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: int) -> "NcPoly":
        return NcPoly(self.p, {w: v * c for w, v in self.terms.items()})

    # -- printing ----------------------------------------------------------

    def sorted_words(self) -> list[Word]:
        return sorted(self.terms, key=lambda w: (len(w), w))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in self.sorted_words():
            c = self.terms[w]
            body = _format_word(w)
            parts.append(body if c == 1 else f"{c}*{body}")
        return " + ".join(parts)


def _format_word(w: Word) -> str:
    if not w:
        return "1"
    out = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        out.append(w[i] if j - i == 1 else f"{w[i]}^{j - i}")
        i = j
    return "*".join(out)


def commutator(f: NcPoly, g: NcPoly) -> NcPoly:
    return f * g - g * f


def lie_word(n: int, variables, p: int) -> NcPoly:
    """Left-normed Lie commutator of length n, fully expanded.

    The expansion has exactly 2^(n-1) words, each a permutation of the
    arguments with coefficient +-1.
    """
    variables = [str(v) for v in variables]
    if n < 2 or len(variables) != n or len(set(variables)) != n:
        raise BadArity(f"need {n} >= 2 distinct variables")
    if n > LIE_WORD_CAP:
        raise BadArity(f"length {n} exceeds the expansion cap {LIE_WORD_CAP};"
                       " use the t-ideal span machinery instead")
    poly = commutator(NcPoly.var(variables[0], p), NcPoly.var(variables[1], p))
    for v in variables[2:]:
        poly = commutator(poly, NcPoly.var(v, p))
    return poly


def engel_polynomial(n: int, x: str, y: str, p: int) -> tuple[NcPoly, NcPoly]:
    """The degree-(n+1) Engel polynomial, twice.

    Returns (recursive, closed): the recursive form substitutes into the
    length n+1 Lie word, the closed form is
    sum_k C(n,k) (-1)^k y^k x y^(n-k).  The two agree identically.
    """
    if n < 1:
        raise BadArity("n must be >= 1")
    if x == y:
        raise BadArity("x and y must differ")
    fresh = [f"@e{i}" for i in range(n + 1)]
    base = lie_word(n + 1, fresh, p)
    assignment = {fresh[0]: NcPoly.var(x, p)}
    for v in fresh[1:]:
        assignment[v] = NcPoly.var(y, p)
    recursive = substitute(base, assignment)
    terms: dict[Word, int] = {}
    for k in range(n + 1):
        w = (y,) * k + (x,) + (y,) * (n - k)
        terms[w] = terms.get(w, 0) + (-1) ** k * _binomial(n, k)
    closed = NcPoly(p, terms)
    return recursive, closed


def substitute(f: NcPoly, assignment: dict[str, NcPoly]) -> NcPoly:
    """Image of f under the endomorphism sending each variable to its
    assigned polynomial; unassigned variables map to themselves."""
    p = f.p
    for g in assignment.values():
        if g.p != p:
            raise CharMismatch("assignment characteristic differs")
    out = NcPoly.zero(p)
    cache: dict[str, NcPoly] = {}
    for w, c in f.terms.items():
        acc = NcPoly(p, {(): c})
        for letter in w:
            img = cache.get(letter)
            if img is None:
                img = assignment.get(letter, NcPoly.var(letter, p))
                cache[letter] = img
            acc = acc * img
        out = out + acc
    return out


def word_multidegree(w: Word, variables) -> tuple[int, ...]:
    return tuple(w.count(v) for v in variables)


def multihomogeneous_components(f: NcPoly) -> dict[tuple, NcPoly]:
    """Split f by multidegree.  Keys are sorted (variable, degree) tuples
    restricted to the variables that occur; insertion order is the sorted
    key order, so iteration is deterministic."""
    vs = sorted(f.variables())
    buckets: dict[tuple, dict[Word, int]] = {}
    for w, c in f.terms.items():
        key = tuple((v, w.count(v)) for v in vs if v in w)
        buckets.setdefault(key, {})[w] = c
    return {key: NcPoly(f.p, buckets[key]) for key in sorted(buckets)}


def fresh_linearization_names(var: str, d: int) -> list[str]:
    # the dot never appears in parsed identifiers, so no collisions
    return [f"{var}.{i}" for i in range(1, d + 1)]


def full_linearization(f: NcPoly, targets) -> NcPoly:
    """Replace each target variable of degree d by d fresh variables and
    keep the component multilinear in the fresh ones.

    Requires f to be multihomogeneous in every target variable; the fresh
    names follow a deterministic suffix scheme, so outputs are comparable
    across runs.
    """
    out = f
    for var in sorted(str(v) for v in targets):
        degs = {w.count(var) for w in out.terms}
        if len(degs) > 1:
            raise NotHomogeneous(
                f"not multihomogeneous in {var}: degrees {sorted(degs)}")
        d = degs.pop() if degs else 0
        if d == 0:
            continue
        fresh = fresh_linearization_names(var, d)
        expanded = substitute(
            out, {var: NcPoly(out.p, {(nm,): 1 for nm in fresh})})
        kept = {w: c for w, c in expanded.terms.items()
                if all(w.count(nm) == 1 for nm in fresh)}
        out = NcPoly(out.p, kept)
    return out


# ---------------------------------------------------------------------------
# representations: sums of monomials and commutator monomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlainTerm:
    """coeff * word"""
    coeff: int
    word: Word


@dataclass(frozen=True)
class CommTerm:
    """coeff * left * [i, j] * right, with possibly empty flanks."""
    coeff: int
    left: Word
    i: str
    j: str
    right: Word


ReprTerm = PlainTerm | CommTerm


def rep_to_poly(rep: list[ReprTerm], p: int) -> NcPoly:
    """The noncommutative polynomial a representation denotes."""
    out = NcPoly.zero(p)
    for term in rep:
        if isinstance(term, PlainTerm):
            out = out + NcPoly.word(term.word, p, term.coeff)
        else:
            bracket = commutator(NcPoly.var(term.i, p), NcPoly.var(term.j, p))
            val = NcPoly.word(term.left, p) * bracket * NcPoly.word(term.right, p)
            out = out + val.scale(term.coeff)
    return out


@dataclass(frozen=True)
class DegreeSets:
    """Occurrence degrees S and bilateral degrees D of a representation.

    Both depend on the representation, not only on the denoted
    polynomial.  D is None when the representation contains plain
    monomials, for which bilateral degrees are undefined.
    """

    s_set: frozenset[int]
    d_set: frozenset[tuple[int, int]] | None

    def require_d(self) -> frozenset[tuple[int, int]]:
        if self.d_set is None:
            raise MalformedRepresentation(
                "bilateral degrees are undefined: the representation "
                "contains plain monomials")
        return self.d_set

    def coupled(self) -> bool:
        if self.d_set is None:
            return False
        return self.s_set == frozenset(i + j for i, j in self.d_set)


def degree_sets(rep: list[ReprTerm], variables) -> DegreeSets:
    """S and D sets of a representation over the given variables.

    S collects, per term and per variable, the occurrence count in the
    flattened monomial.  D is defined only for commutator monomials: a
    variable absent from the bracket contributes the pair of flank
    degrees, a variable sitting in a bracket slot contributes the two
    pairs shifted by the bracket occurrence.
    """
    variables = [str(v) for v in variables]
    if not rep:
        raise MalformedRepresentation("empty representation")
    s_out: set[int] = set()
    d_out: set[tuple[int, int]] = set()
    all_comm = True
    for term in rep:
        if isinstance(term, PlainTerm):
            all_comm = False
            if not term.word:
                raise MalformedRepresentation("empty monomial")
            for u in variables:
                s_out.add(term.word.count(u))
        elif isinstance(term, CommTerm):
            if term.i == term.j:
                raise MalformedRepresentation(
                    f"bracket [{term.i},{term.i}] denotes zero")
            for u in variables:
                k = term.left.count(u)
                m = term.right.count(u)
                in_bracket = int(u == term.i) + int(u == term.j)
                s_out.add(k + m + in_bracket)
                if in_bracket:
                    d_out.add((k + 1, m))
                    d_out.add((k, m + 1))
                else:
                    d_out.add((k, m))
        else:
            raise MalformedRepresentation(f"unknown term {term!r}")
    return DegreeSets(frozenset(s_out),
                      frozenset(d_out) if all_comm else None)
