"""Bounded-degree T-ideal consequence spans in the free algebra.

A consequence of a generator g is any u * g(p_1, ..., p_d) * v.  At a
fixed multidegree these form a linear span with a computable basis:

* multilinear mode: generators must be multilinear, so substituting
  single words (with word flanks) already spans everything of the target
  multilinear degree;
* graded mode: each generator variable is substituted by a formal linear
  combination of candidate words and the coefficients of the formal
  scalars are extracted; every extracted component becomes a row.  This
  is closure under partial linearization, which is what makes the span
  correct in characteristic p.

Membership certificates are combinations of rows that re-expand to the
queried polynomial exactly; a "no" only means the polynomial is outside
the span generated at this bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import (combinations, combinations_with_replacement,
                       permutations, product)

import numpy as np

from .errors import CapExceeded, CharMismatch, NotHomogeneous
from .freealg import NcPoly, Word
from .gfmat import DENSE_COLUMN_CAP, RowSpace

MULTILINEAR_DEGREE_CAP = 8
GRADED_DEGREE_CAP = 6

MODE_MULTILINEAR = "multilinear"
MODE_GRADED = "graded"


@dataclass(frozen=True)
class SpanRow:
    """One consequence row: coeffless u * g(substitution) * v.

    ``subst`` maps each generator variable to its replacement: a single
    word in multilinear mode, a sorted tuple of words (a multiset, one
    entry per occurrence) in graded mode.
    """

    gen_index: int
    left: Word
    subst: tuple[tuple[str, tuple], ...]
    right: Word
    mode: str

    def expand(self, gens: tuple[NcPoly, ...]) -> NcPoly:
        g = gens[self.gen_index]
        if self.mode == MODE_MULTILINEAR:
            return _expand_multilinear_row(g, self.left, dict(self.subst),
                                           self.right)
        return _expand_graded_row(g, self.left, dict(self.subst), self.right)

    def describe(self) -> str:
        if self.mode == MODE_MULTILINEAR:
            inner = ", ".join(f"{v} -> {_fmt_word(w)}" for v, w in self.subst)
        else:
            inner = ", ".join(f"{v} -> {_fmt_multiset(ws)}"
                              for v, ws in self.subst)
        u = _fmt_word(self.left) or "1"
        v = _fmt_word(self.right) or "1"
        return f"{u} * g{self.gen_index + 1}({inner}) * {v}"


def _fmt_word(w: Word) -> str:
    return "".join(w)


def _fmt_multiset(ws) -> str:
    return "{" + ", ".join(_fmt_word(w) for w in ws) + "}"


def _expand_multilinear_row(g: NcPoly, left: Word, subst: dict[str, Word],
                            right: Word) -> NcPoly:
    terms: dict[Word, int] = {}
    for w, c in g.terms.items():
        spliced = list(left)
        for letter in w:
            spliced.extend(subst[letter])
        spliced.extend(right)
        key = tuple(spliced)
        terms[key] = terms.get(key, 0) + c
    return NcPoly(g.p, terms)


def _expand_graded_row(g: NcPoly, left: Word,
                       nu: dict[str, tuple[Word, ...]],
                       right: Word) -> NcPoly:
    """Partial-linearization component: sum over all assignments of each
    variable's occurrence slots to its multiset of replacement words."""
    terms: dict[Word, int] = {}
    for w, c in g.terms.items():
        counts: dict[str, int] = {}
        for letter in w:
            counts[letter] = counts.get(letter, 0) + 1
        if any(counts.get(v, 0) != len(words) for v, words in nu.items()):
            continue
        if any(v not in nu for v in counts):
            continue
        var_order = sorted(nu)
        arrangement_sets = [sorted(set(permutations(nu[v])))
                            for v in var_order]
        for picks in product(*arrangement_sets):
            chosen = dict(zip(var_order, picks))
            spliced = list(left)
            pos = {v: 0 for v in var_order}
            for letter in w:
                spliced.extend(chosen[letter][pos[letter]])
                pos[letter] += 1
            spliced.extend(right)
            key = tuple(spliced)
            terms[key] = terms.get(key, 0) + c
    return NcPoly(g.p, terms)


# ---------------------------------------------------------------------------
# row enumeration
# ---------------------------------------------------------------------------

def _iter_multilinear_rows(gens: tuple[NcPoly, ...], variables: tuple[str, ...]):
    n = len(variables)
    for gi, g in enumerate(gens):
        gvars = sorted(g.variables())
        d = len(gvars)
        if d == 0 or d > n:
            continue
        for perm in permutations(variables):
            for i in range(0, n - d + 1):          # |u| = i
                for j in range(i + d, n + 1):      # v starts at j
                    middle = perm[i:j]
                    for cuts in combinations(range(1, len(middle)), d - 1):
                        bounds = (0,) + cuts + (len(middle),)
                        parts = tuple(middle[bounds[t]:bounds[t + 1]]
                                      for t in range(d))
                        yield SpanRow(gi, perm[:i],
                                      tuple(zip(gvars, parts)),
                                      perm[j:], MODE_MULTILINEAR)


def _words_within(mu: dict[str, int]):
    """All nonempty words with multidegree <= mu, componentwise."""
    variables = sorted(mu)
    out: list[Word] = []

    def rec(prefix: list[str], remaining: dict[str, int]):
        if prefix:
            out.append(tuple(prefix))
        if len(prefix) >= sum(mu.values()):
            return
        for v in variables:
            if remaining[v]:
                remaining[v] -= 1
                prefix.append(v)
                rec(prefix, remaining)
                prefix.pop()
                remaining[v] += 1

    rec([], dict(mu))
    return sorted(set(out), key=lambda w: (len(w), w))


def _word_mdeg(w: Word, variables) -> tuple[int, ...]:
    return tuple(w.count(v) for v in variables)


def _iter_graded_rows(gens: tuple[NcPoly, ...], mu: dict[str, int]):
    variables = sorted(mu)
    target = tuple(mu[v] for v in variables)
    pool = _words_within(mu)
    by_mdeg: dict[tuple[int, ...], list[Word]] = {}
    for w in pool + [()]:
        by_mdeg.setdefault(_word_mdeg(w, variables), []).append(w)

    def mdeg_sub(a, b):
        out = tuple(x - y for x, y in zip(a, b))
        return out if all(x >= 0 for x in out) else None

    for gi, g in enumerate(gens):
        gvars = sorted(g.variables())
        profiles = sorted({
            tuple(w.count(y) for y in gvars) for w in g.terms})
        for prof in profiles:
            if sum(prof) == 0:
                continue

            def rec(vi: int, acc: list[tuple[str, tuple[Word, ...]]],
                    remaining: tuple[int, ...]):
                if vi == len(gvars):
                    # flanks: every split of the remaining multidegree
                    for umd in sorted(by_mdeg):
                        vmd = mdeg_sub(remaining, umd)
                        if vmd is None or vmd not in by_mdeg:
                            continue
                        for u in by_mdeg[umd]:
                            for v in by_mdeg[vmd]:
                                yield SpanRow(gi, u, tuple(acc), v,
                                              MODE_GRADED)
                    return
                var = gvars[vi]
                size = prof[vi]
                if size == 0:
                    yield from rec(vi + 1, acc + [(var, ())], remaining)
                    return
                for multiset in combinations_with_replacement(pool, size):
                    used = tuple(
                        sum(w.count(x) for w in multiset) for x in variables)
                    rest = mdeg_sub(remaining, used)
                    if rest is None:
                        continue
                    yield from rec(vi + 1, acc + [(var, multiset)], rest)

            yield from rec(0, [], target)


# ---------------------------------------------------------------------------
# elimination with certificate tracking
# ---------------------------------------------------------------------------

class _DenseEliminator:
    """RREF over GF(p) with numpy rows; combination vectors are kept per
    basis row over the raw rows that were actually inserted."""

    def __init__(self, p: int, ncols: int):
        self.p = p
        self.ncols = ncols
        self.basis = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list[int] = []
        self.combos = np.zeros((0, 0), dtype=np.int64)
        self.raw_ids: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def _reduce_plain(self, vec: np.ndarray) -> np.ndarray:
        if not self.pivots:
            return vec % self.p
        coefs = vec[self.pivots] % self.p
        if not coefs.any():
            return vec % self.p
        return (vec - coefs @ self.basis) % self.p

    def try_insert(self, vec: np.ndarray, raw_id: int) -> bool:
        red = self._reduce_plain(np.asarray(vec, dtype=np.int64))
        nz = np.nonzero(red)[0]
        if nz.size == 0:
            return False
        piv = int(nz[0])
        inv = pow(int(red[piv]), -1, self.p)
        row = (red * inv) % self.p
        # combination of raw rows giving `row`
        n = len(self.raw_ids)
        combo = np.zeros(n + 1, dtype=np.int64)
        combo[n] = 1
        if n:
            coefs = (np.asarray(vec, dtype=np.int64)[self.pivots]) % self.p
            combo[:n] = (-coefs @ self.combos) % self.p
            combo[:n] = (combo[:n] * inv) % self.p
        combo[n] = inv % self.p
        # grow combo matrix and clear the new pivot from existing rows
        if n:
            grown = np.zeros((n, n + 1), dtype=np.int64)
            grown[:, :n] = self.combos
            self.combos = grown
            col = self.basis[:, piv] % self.p
            if col.any():
                self.basis = (self.basis - np.outer(col, row)) % self.p
                self.combos = (self.combos - np.outer(col, combo)) % self.p
        self.basis = np.vstack([self.basis, row[None, :]])
        self.combos = (np.vstack([self.combos, combo[None, :]])
                       if n else combo[None, :].copy())
        self.pivots.append(piv)
        self.raw_ids.append(raw_id)
        return True

    def express(self, vec: np.ndarray) -> dict[int, int] | None:
        """Combination {raw_id: coeff} with vec = sum coeff * raw row."""
        vec = np.asarray(vec, dtype=np.int64) % self.p
        if not self.pivots:
            return None if vec.any() else {}
        coefs = vec[self.pivots] % self.p
        residual = (vec - coefs @ self.basis) % self.p
        if residual.any():
            return None
        raw = (coefs @ self.combos) % self.p
        return {rid: int(c) for rid, c in zip(self.raw_ids, raw) if int(c)}


class _SparseEliminator:
    """Fallback above the dense column cap; slower but unbounded."""

    def __init__(self, p: int, ncols: int):
        self.space = RowSpace(p, ncols, track=True)
        self.p = p

    @property
    def dim(self) -> int:
        return self.space.dim

    def try_insert(self, vec, raw_id: int) -> bool:
        return self.space.insert(vec, raw_id)

    def express(self, vec):
        return self.space.express(vec)

    def _reduce_plain(self, vec):
        row, _ = self.space.residual(vec)
        return row


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------

@dataclass
class SpanBasis:
    """Reduced consequence-span basis at one degree key."""

    mode: str
    key: tuple
    gens: tuple[NcPoly, ...]
    p: int
    columns: list[Word]
    rows: list[SpanRow]              # raw rows that enlarged the span
    _elim: object

    @property
    def dimension(self) -> int:
        return self._elim.dim

    def contains(self, f: NcPoly) -> bool:
        vec = _vectorize(f, self.columns)
        red = self._elim._reduce_plain(vec) if isinstance(
            self._elim, _DenseEliminator) else self._elim._reduce_plain(
                {i: int(v) for i, v in enumerate(vec) if v})
        return not (red.any() if isinstance(red, np.ndarray) else bool(red))

    def reduced_row_poly(self, i: int) -> NcPoly:
        if isinstance(self._elim, _DenseEliminator):
            vec = self._elim.basis[i]
            return NcPoly(self.p, {
                self.columns[j]: int(c) for j, c in enumerate(vec) if c})
        row = self._elim.space.rows[i]
        return NcPoly(self.p, {self.columns[j]: c for j, c in row.items()})

    def row_provenance(self, i: int) -> list[tuple[int, SpanRow]]:
        """The reduced basis row as a combination of raw span rows."""
        if isinstance(self._elim, _DenseEliminator):
            combo = self._elim.combos[i]
            return [(int(c), self.rows[j]) for j, c in enumerate(combo)
                    if int(c)]
        combo = self._elim.space.combos[i]
        by_id = {idx: row for idx, row in enumerate(self.rows)}
        return [(c, by_id[rid]) for rid, c in sorted(combo.items()) if c]


@dataclass
class Membership:
    member: bool
    certificate: list[tuple[int, SpanRow]] | None
    gens: tuple[NcPoly, ...]
    span_dimension: int
    rows_seen: int
    caveat: str | None = None

    def expand_certificate(self) -> NcPoly:
        if not self.member:
            raise ValueError("no certificate on a negative result")
        total = NcPoly.zero(self.gens[0].p)
        for coeff, row in self.certificate:
            total = total + row.expand(self.gens).scale(coeff)
        return total


def _normalize_gens(gens) -> tuple[NcPoly, ...]:
    gens = tuple(gens)
    if not gens:
        raise ValueError("no generators")
    chars = {g.p for g in gens}
    if len(chars) != 1:
        raise CharMismatch("generators of mixed characteristic")
    return gens


def _multilinear_target(f: NcPoly) -> tuple[str, ...]:
    if not f.is_multilinear():
        raise NotHomogeneous("multilinear mode needs a multilinear query")
    return tuple(sorted(f.variables()))


def _graded_target(f: NcPoly) -> dict[str, int]:
    keys = {tuple(sorted((v, w.count(v)) for v in set(w)))
            for w in f.terms}
    if len(keys) != 1:
        raise NotHomogeneous("graded mode needs a multihomogeneous query")
    return dict(next(iter(keys)))


def _columns_for(mode: str, key) -> list[Word]:
    if mode == MODE_MULTILINEAR:
        return [tuple(perm) for perm in permutations(key)]
    letters: list[str] = []
    for v, d in sorted(key.items()):
        letters.extend([v] * d)
    return sorted(set(permutations(letters)), key=lambda w: (len(w), w))


def _vectorize(f: NcPoly, columns: list[Word]) -> np.ndarray:
    index = {w: i for i, w in enumerate(columns)}
    vec = np.zeros(len(columns), dtype=np.int64)
    for w, c in f.terms.items():
        if w not in index:
            raise NotHomogeneous(f"word {w} is outside the target degree")
        vec[index[w]] = c
    return vec


def _check_caps(mode: str, total_degree: int, ncols: int) -> None:
    if mode == MODE_MULTILINEAR and total_degree > MULTILINEAR_DEGREE_CAP:
        raise CapExceeded(
            f"multilinear degree {total_degree} exceeds cap "
            f"{MULTILINEAR_DEGREE_CAP}")
    if mode == MODE_GRADED and total_degree > GRADED_DEGREE_CAP:
        raise CapExceeded(
            f"graded degree {total_degree} exceeds cap {GRADED_DEGREE_CAP}")


def _make_eliminator(p: int, ncols: int):
    if ncols <= DENSE_COLUMN_CAP:
        return _DenseEliminator(p, ncols)
    return _SparseEliminator(p, ncols)


def _row_iter(mode: str, gens, key):
    if mode == MODE_MULTILINEAR:
        return _iter_multilinear_rows(gens, key)
    return _iter_graded_rows(gens, key)


def _require_multilinear_gens(gens) -> None:
    for g in gens:
        if not g.is_multilinear():
            raise NotHomogeneous(
                "multilinear mode needs multilinear generators; "
                "use graded mode instead")


def consequence_basis(gens, degree_bound: int, mode: str,
                      variables=None) -> SpanBasis:
    """Span of all target-degree consequences of the generators.

    In multilinear mode the target is the multilinear degree in
    ``variables`` (default x1..x<degree_bound>); in graded mode
    ``variables`` must be a multidegree mapping.
    """
    gens = _normalize_gens(gens)
    p = gens[0].p
    if mode == MODE_MULTILINEAR:
        key = (tuple(str(v) for v in variables) if variables is not None
               else tuple(f"x{i + 1}" for i in range(degree_bound)))
        if len(key) != degree_bound:
            raise ValueError("degree bound does not match variable count")
        total = degree_bound
    elif mode == MODE_GRADED:
        if not isinstance(variables, dict):
            raise ValueError("graded mode needs a multidegree mapping")
        key = dict(variables)
        total = sum(key.values())
        if degree_bound != total:
            raise ValueError("degree bound does not match the multidegree")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    columns = _columns_for(mode, key)
    _check_caps(mode, total, len(columns))
    elim = _make_eliminator(p, len(columns))
    kept: list[SpanRow] = []
    for row in _row_iter(mode, gens, key):
        poly = row.expand(gens)
        if poly.is_zero():
            continue
        vec = _vectorize(poly, columns)
        if elim.try_insert(vec, len(kept)):
            kept.append(row)
    frozen_key = (key if mode == MODE_MULTILINEAR
                  else tuple(sorted(key.items())))
    return SpanBasis(mode, frozen_key, gens, p, columns, kept, elim)


def tideal_member(f: NcPoly, gens, degree_bound: int | None = None,
                  mode: str = MODE_MULTILINEAR) -> Membership:
    """Span membership of f among target-degree consequences of gens.

    A positive answer carries a certificate whose re-expansion equals f
    exactly; a negative answer only rules out the span at this bound.
    Row generation stops as soon as the residual of f hits zero.
    """
    gens = _normalize_gens(gens)
    p = gens[0].p
    if f.p != p:
        raise CharMismatch("query characteristic differs from generators")
    if f.is_zero():
        return Membership(True, [], gens, 0, 0)
    if mode == MODE_MULTILINEAR:
        _require_multilinear_gens(gens)
        key = _multilinear_target(f)
        total = len(key)
    elif mode == MODE_GRADED:
        key = _graded_target(f)
        total = sum(key.values())
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if degree_bound is not None and degree_bound != total:
        raise ValueError(
            f"degree bound {degree_bound} does not match the query degree "
            f"{total}")
    columns = _columns_for(mode, key)
    _check_caps(mode, total, len(columns))
    elim = _make_eliminator(p, len(columns))
    fvec = _vectorize(f, columns)
    kept: list[SpanRow] = []
    rows_seen = 0
    member = False
    if isinstance(elim, _DenseEliminator):
        fres = fvec.copy() % p
        for row in _row_iter(mode, gens, key):
            rows_seen += 1
            poly = row.expand(gens)
            if poly.is_zero():
                continue
            vec = _vectorize(poly, columns)
            if elim.try_insert(vec, len(kept)):
                kept.append(row)
                piv = elim.pivots[-1]
                c = int(fres[piv])
                if c:
                    fres = (fres - c * elim.basis[-1]) % p
                    if not fres.any():
                        member = True
                        break
    else:
        for row in _row_iter(mode, gens, key):
            rows_seen += 1
            poly = row.expand(gens)
            if poly.is_zero():
                continue
            vec = _vectorize(poly, columns)
            if elim.try_insert(vec, len(kept)):
                kept.append(row)
                red, _ = elim.space.residual(
                    {i: int(v) for i, v in enumerate(fvec) if v})
                if not red:
                    member = True
                    break
    combo = elim.express(fvec)
    if combo is None:
        return Membership(
            False, None, gens, elim.dim, rows_seen,
            caveat=("not in the consequence span generated at this degree "
                    "bound; this does not disprove membership in the full "
                    "T-ideal"))
    certificate = [(c, kept[rid]) for rid, c in sorted(combo.items())]
    return Membership(True, certificate, gens, elim.dim, rows_seen)
