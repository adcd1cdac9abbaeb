"""Lie-nilpotency certification against the almost-L.N. catalog.

Given a field mode and an identity system Sigma, the certifier follows
the classification argument: a non-Lie-nilpotent variety contains an
almost Lie nilpotent subvariety, and for non-prime varieties those are
generated by a known finite catalog of algebras (two truncatable
square-zero constructions over any field, plus the non-Engel pair A(F),
A(F)* and the twisted triangular B(F,G,sigma) over finite fields).

* If some catalog algebra satisfies Sigma, the variety contains a
  non-Lie-nilpotent algebra: NOT_LIE_NILPOTENT, unconditionally.
* If Sigma is syntactically non-prime (a member is a product of two or
  more Lie words in disjoint variables) and every catalog algebra
  definitely fails Sigma with a replayable witness: LIE_NILPOTENT.
* Anything else is INCONCLUSIVE with the blockers named, including the
  prime-variety gap the classification does not cover.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .algebras import (
    AlgElem,
    StructAlgebra,
    evaluate_poly,
    field_algebra,
    make_A,
    make_C,
    make_B,
    opposite,
    valid_sigmas,
)
from .errors import CapExceeded, CharMismatch, ParseError
from .fields import FieldSpec, gf_make, is_prime
from .freealg import NcPoly, Word
from .idcheck import (
    DEFAULT_BUDGET,
    CheckVerdict,
    IdentitySystem,
    SEM_FINITE,
    SEM_INFINITE,
    SystemVerdict,
    Witness,
    adjoint_matrix,
    analyze_lie_chain,
    is_engel,
    satisfies_system,
)

C_TRUNCATION_CAP = 12


@dataclass(frozen=True)
class FieldMode:
    """Finite GF(p^k) or an unspecified infinite field of char p."""

    kind: str        # "finite" | "infinite"
    p: int
    k: int = 1

    @classmethod
    def finite(cls, p: int, k: int = 1) -> "FieldMode":
        return cls("finite", p, k)

    @classmethod
    def infinite(cls, p: int) -> "FieldMode":
        return cls("infinite", p)

    @classmethod
    def parse(cls, text: str) -> "FieldMode":
        text = text.strip()
        m = re.fullmatch(r"GF\((\d+)(?:\^(\d+))?\)", text)
        if m:
            p, k = int(m.group(1)), int(m.group(2) or 1)
            if not is_prime(p):
                raise ParseError(f"{p} is not prime")
            return cls.finite(p, k)
        m = re.fullmatch(r"(?:infinite|char)\((\d+)\)", text)
        if m:
            p = int(m.group(1))
            if not is_prime(p):
                raise ParseError(f"{p} is not prime")
            return cls.infinite(p)
        raise ParseError(
            f"bad mode {text!r}; use GF(p), GF(p^k), or infinite(p)")

    @property
    def semantics(self) -> str:
        return SEM_FINITE if self.kind == "finite" else SEM_INFINITE

    def field(self) -> FieldSpec:
        if self.kind != "finite":
            raise ValueError("infinite mode has no field descriptor")
        return gf_make(self.p, self.k)

    def __str__(self):
        if self.kind == "finite":
            return f"finite {gf_make(self.p, self.k)}"
        return f"infinite, characteristic {self.p}"


@dataclass(frozen=True)
class Bounds:
    truncation: int | None = None   # C-truncation; default max degree of Sigma
    ext_bound: int = 4              # cap on [G:F] for the B sweep
    budget: int = DEFAULT_BUDGET


@dataclass(frozen=True)
class NonprimeWitness:
    """A Sigma member recognized as a product of disjoint Lie words."""

    member_index: int
    factors: tuple[tuple[str, ...], ...]

    def describe(self) -> str:
        shape = " * ".join(
            f"W{len(vs)}({','.join(vs)})" for vs in self.factors)
        return (f"member {self.member_index + 1} is {shape} "
                f"up to a nonzero scalar")


# ---------------------------------------------------------------------------
# recognizing products of Lie words
# ---------------------------------------------------------------------------

def _match_scaled_lie(g: NcPoly) -> tuple[str, ...] | None:
    """Variables (v1..vn) with g = c * W_n(v1..vn), c nonzero; else None."""
    words = list(g.terms)
    if not words or not g.is_multilinear():
        return None
    n = len(words[0])
    if n < 2 or len(words) != 2 ** (n - 1):
        return None
    if n == 2:
        w1 = min(words)
        w2 = (w1[1], w1[0])
        if set(words) != {w1, w2}:
            return None
        if (g.terms[w1] + g.terms[w2]) % g.p != 0:
            return None
        return w1
    for last in sorted({w[-1] for w in words} & {w[0] for w in words}):
        enders: dict[Word, int] = {}
        starters: dict[Word, int] = {}
        ok = True
        for w, c in g.terms.items():
            if w[-1] == last:
                enders[w[:-1]] = c
            elif w[0] == last:
                starters[w[1:]] = c
            else:
                ok = False
                break
        if not ok or len(enders) != len(starters):
            continue
        h = NcPoly(g.p, enders)
        if h + NcPoly(g.p, starters) != NcPoly.zero(g.p):
            continue
        sub = _match_scaled_lie(h)
        if sub is not None:
            return sub + (last,)
    return None


def _match_lie_product(f: NcPoly) -> tuple[tuple[str, ...], ...] | None:
    """Factor tuples when f is a scalar multiple of a product of s >= 2
    Lie words over pairwise disjoint variables; else None."""
    if f.is_zero() or not f.is_multilinear():
        return None
    words = list(f.terms)
    n = len(words[0])
    letters_at = [frozenset(w[pos] for w in words) for pos in range(n)]
    blocks: list[tuple[int, int]] = []
    start = 0
    union: set[str] = set()
    for pos in range(n):
        union |= letters_at[pos]
        if len(union) == pos - start + 1:
            blocks.append((start, pos + 1))
            start = pos + 1
            union = set()
    if union or len(blocks) < 2:
        return None
    if any(e - s < 2 for s, e in blocks):
        return None
    w0 = min(words)
    p = f.p
    factors: list[NcPoly] = []
    for s, e in blocks:
        terms: dict[Word, int] = {}
        for w, c in f.terms.items():
            if w[:s] == w0[:s] and w[e:] == w0[e:]:
                terms[w[s:e]] = c
        factors.append(NcPoly(p, terms))
    # f must factor exactly as the tensor product of the extracted blocks
    expected = factors[0]
    for g in factors[1:]:
        expected = expected * g
    inv = pow(f.terms[w0], -1, p)
    expected = expected.scale(pow(inv, len(factors) - 1, p))
    if expected != f:
        return None
    matched = []
    for g in factors:
        vs = _match_scaled_lie(g)
        if vs is None:
            return None
        matched.append(vs)
    return tuple(matched)


def find_nonprime_witness(system: IdentitySystem) -> NonprimeWitness | None:
    """Scan Sigma for a member of the shape W * W * ... over disjoint
    variable tuples; this is the only syntactic non-primeness source the
    certifier trusts without a user assertion."""
    for idx, f in enumerate(system.polys):
        factors = _match_lie_product(f)
        if factors is not None:
            return NonprimeWitness(idx, factors)
    return None


# ---------------------------------------------------------------------------
# the catalog
# ---------------------------------------------------------------------------

@dataclass
class CatalogEntry:
    name: str                  # paper-level tag, e.g. "A(C)" or "B(F,G,s^j)"
    algebra: StructAlgebra
    truncation: int | None = None
    non_engel: bool = False    # member of the non-Engel sublist


def build_catalog(mode: FieldMode, truncation: int,
                  ext_bound: int) -> tuple[list[CatalogEntry], list[str]]:
    """Catalog algebras for the mode, plus blockers for skipped entries."""
    if not 1 <= truncation <= C_TRUNCATION_CAP:
        raise CapExceeded(
            f"C truncation {truncation} outside [1, {C_TRUNCATION_CAP}]")
    blockers: list[str] = []
    entries: list[CatalogEntry] = []
    if mode.kind == "infinite":
        base = gf_make(mode.p, 1)
        ac = make_A(make_C(truncation, base))
        entries.append(CatalogEntry("A(C)", ac, truncation))
        entries.append(CatalogEntry("A(C)*", opposite(ac), truncation))
        return entries, blockers
    f = mode.field()
    af = make_A(field_algebra(f))
    entries.append(CatalogEntry(f"A({f})", af, non_engel=True))
    entries.append(CatalogEntry(f"A({f})*", opposite(af), non_engel=True))
    ac = make_A(make_C(truncation, f))
    entries.append(CatalogEntry("A(C)", ac, truncation))
    entries.append(CatalogEntry("A(C)*", opposite(ac), truncation))
    for ext in range(2, ext_bound + 1):
        if not _is_prime_power(ext):
            continue
        try:
            g = gf_make(mode.p, mode.k * ext)
        except CapExceeded:
            blockers.append(
                f"extension [G:F]={ext} skipped: field size exceeds the cap")
            continue
        for j in valid_sigmas(f, g):
            entries.append(CatalogEntry(
                f"B({f},{g},sigma^{j})", make_B(f, g, j), non_engel=True))
    return entries, blockers


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, n + 1):
        if n % d == 0:
            while n % d == 0:
                n //= d
            return n == 1
    return False


# ---------------------------------------------------------------------------
# the Engel shortcut
# ---------------------------------------------------------------------------

def engel_power_member(system: IdentitySystem) -> tuple[int, str, str, int] | None:
    """Index of a Sigma member of the shape c*[x, y^n] with n a power of
    the characteristic, plus (x, y, n)."""
    p = system.p
    for idx, f in enumerate(system.polys):
        if len(f.terms) != 2:
            continue
        (w1, c1), (w2, c2) = sorted(f.terms.items())
        if (c1 + c2) % p != 0:
            continue
        n = len(w1) - 1
        if n < 1 or len(w2) != n + 1:
            continue
        m = n
        while m % p == 0:
            m //= p
        if m != 1:
            continue
        for a, b in ((w1[0], w1[-1]), (w1[-1], w1[0])):
            if a == b:
                continue
            if (w1 == (a,) + (b,) * n and w2 == (b,) * n + (a,)) or (
                    w2 == (a,) + (b,) * n and w1 == (b,) * n + (a,)):
                return idx, a, b, n
    return None


def engel_shortcut_rejection(entry: CatalogEntry, system: IdentitySystem,
                             member: tuple[int, str, str, int],
                             budget: int) -> SystemVerdict | None:
    """Reject a non-Engel catalog algebra against c*[x, y^n], n = p^t.

    Since [x, y^n] for such n equals the iterated bracket with y taken n
    times, a non-nilpotent ad(y0) yields a basis vector x0 with
    [x0, y0^n] nonzero, which is a concrete witness for the member."""
    idx, xvar, yvar, n = member
    a = entry.algebra
    ev = is_engel(a, budget)
    if not ev.is_no:
        return None
    y0 = ev.witness.y
    mat = adjoint_matrix(a, y0)
    power = _matrix_power(mat, n, a.p)
    cols = np.nonzero(power.any(axis=0))[0]
    if cols.size == 0:  # pragma: no cover - ad is not nilpotent
        return None
    x0 = a.basis_element(int(cols[0]))
    assignment = {xvar: x0, yvar: y0}
    value = evaluate_poly(system.polys[idx], a, assignment)
    if value.is_zero():  # pragma: no cover - equality [x,y^n] = ad^n fails
        return None
    nz = tuple(i for i, c in enumerate(value.coords) if c)
    verdicts: list = [None] * len(system.polys)
    verdicts[idx] = CheckVerdict(
        "no", "engel-shortcut", ev.evaluations, Witness(assignment, nz))
    return SystemVerdict("no", "engel-shortcut", ev.evaluations, idx,
                         verdicts)


def _matrix_power(mat: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.eye(mat.shape[0], dtype=np.int64)
    base = mat % p
    while e:
        if e & 1:
            result = (result @ base) % p
        base = (base @ base) % p
        e >>= 1
    return result


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

VERDICT_NOT_LN = "NOT_LIE_NILPOTENT"
VERDICT_LN = "LIE_NILPOTENT"
VERDICT_INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class EntryReport:
    entry: CatalogEntry
    verdict: SystemVerdict
    shortcut: bool = False

    def summary(self) -> str:
        v = self.verdict
        if v.holds == "yes":
            return "satisfies Sigma"
        if v.holds == "no":
            witness = v.witness
            detail = ""
            if isinstance(witness, Witness):
                detail = " at " + witness.describe(self.entry.algebra)
            via = " [Engel obstruction]" if self.shortcut else ""
            return (f"fails member {v.failing_index + 1}{detail}{via}")
        return "budget exceeded"


@dataclass
class Certificate:
    verdict: str
    mode: FieldMode
    system: IdentitySystem
    nonprime: NonprimeWitness | None
    assumed_nonprime: bool
    reports: list[EntryReport]
    truncation: int
    ext_bound: int
    budget: int
    evidence: dict = field(default_factory=dict)
    blockers: list[str] = field(default_factory=list)

    @property
    def witness_entry(self) -> EntryReport | None:
        for r in self.reports:
            if r.verdict.is_yes:
                return r
        return None


def certify(mode: FieldMode, system: IdentitySystem,
            bounds: Bounds | None = None,
            assume_nonprime: bool = False) -> Certificate:
    """Run the full certification pipeline; see the module docstring."""
    bounds = bounds or Bounds()
    if system.p != mode.p:
        raise CharMismatch(
            f"system characteristic {system.p} differs from mode {mode.p}")
    truncation = bounds.truncation or max(1, system.max_degree())
    entries, blockers = build_catalog(mode, truncation, bounds.ext_bound)
    nonprime = find_nonprime_witness(system)
    engel_member = engel_power_member(system)
    reports: list[EntryReport] = []
    for entry in entries:
        verdict = None
        shortcut = False
        if entry.non_engel and engel_member is not None:
            verdict = engel_shortcut_rejection(entry, system, engel_member,
                                               bounds.budget)
            shortcut = verdict is not None
        if verdict is None:
            verdict = satisfies_system(entry.algebra, system,
                                       mode.semantics, bounds.budget)
        reports.append(EntryReport(entry, verdict, shortcut))
    cert = Certificate(VERDICT_INCONCLUSIVE, mode, system, nonprime,
                       assume_nonprime, reports, truncation,
                       bounds.ext_bound, bounds.budget, blockers=list(blockers))
    winner = cert.witness_entry
    if winner is not None:
        cert.verdict = VERDICT_NOT_LN
        cert.evidence = _non_ln_evidence(winner.entry, mode)
        return cert
    all_no = all(r.verdict.holds == "no" for r in reports)
    if all_no and not blockers and (nonprime is not None or assume_nonprime):
        cert.verdict = VERDICT_LN
        return cert
    if nonprime is None and not assume_nonprime:
        cert.blockers.append(
            "no non-primeness witness: no Sigma member is a product of "
            "disjoint Lie words, and the classification only covers "
            "non-prime varieties (pass the assume-nonprime flag to assert "
            "it)")
    for r in reports:
        if r.verdict.holds == "budget_exceeded":
            cert.blockers.append(
                f"budget exhausted while checking {r.entry.name}")
    return cert


def _non_ln_evidence(entry: CatalogEntry, mode: FieldMode) -> dict:
    """Why the winning catalog algebra is not Lie nilpotent."""
    if entry.truncation is not None:
        # truncations are Lie nilpotent; what grows is the class
        base = (gf_make(mode.p, mode.k) if mode.kind == "finite"
                else gf_make(mode.p, 1))
        classes = []
        for n in range(1, 5):
            res = analyze_lie_chain(make_A(make_C(n, base)))
            classes.append(res.nil_class)
        return {
            "kind": "truncation-class-growth",
            "classes": classes,
            "statement": (
                "Lie nilpotency classes of the truncated algebra grow "
                f"strictly with the truncation ({classes}), so the "
                "untruncated algebra is not Lie nilpotent"),
        }
    res = analyze_lie_chain(entry.algebra)
    return {
        "kind": "stable-lie-chain",
        "chain": res.chain,
        "statement": (
            f"lower Lie chain dimensions {res.chain} stabilize at "
            f"{res.chain[-1]} > 0, so the algebra is not Lie nilpotent"),
    }


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def render_certificate(cert: Certificate) -> str:
    lines: list[str] = []
    lines.append("MODE")
    lines.append(f"  {cert.mode}")
    lines.append("SIGMA")
    for i, f in enumerate(cert.system.polys):
        lines.append(f"  {i + 1}. {f!r} = 0")
    lines.append("NONPRIME-WITNESS")
    if cert.nonprime is not None:
        lines.append(f"  {cert.nonprime.describe()}")
    elif cert.assumed_nonprime:
        lines.append("  asserted by the caller (assume-nonprime)")
    else:
        lines.append("  none")
    lines.append("CATALOG")
    width = max((len(r.entry.name) for r in cert.reports), default=4)
    for r in cert.reports:
        name = r.entry.name.ljust(width)
        trunc = (f" [truncated at N={r.entry.truncation}]"
                 if r.entry.truncation is not None else "")
        lines.append(f"  {name} | {r.verdict.holds:>15} | "
                     f"{r.summary()}{trunc}")
    lines.append("VERDICT")
    lines.append(f"  {cert.verdict}")
    if cert.verdict == VERDICT_NOT_LN:
        winner = cert.witness_entry
        lines.append(f"  witness algebra: {winner.entry.name} "
                     f"({winner.entry.algebra.provenance.label})")
        lines.append(f"  {cert.evidence['statement']}")
    if cert.verdict == VERDICT_LN:
        lines.append(
            "  hypotheses: the variety is non-prime (discharged by the "
            "witness above); catalog sweep bounded by the BOUNDS section")
    for b in cert.blockers:
        lines.append(f"  blocked: {b}")
    lines.append("BOUNDS")
    lines.append(f"  truncation N={cert.truncation} | extension bound "
                 f"e={cert.ext_bound} | budget {cert.budget}")
    return "\n".join(lines) + "\n"


def render_machine(cert: Certificate) -> str:
    parts = [f"verdict={cert.verdict}"]
    if cert.mode.kind == "finite":
        q = (f"{cert.mode.p}" if cert.mode.k == 1
             else f"{cert.mode.p}^{cert.mode.k}")
        parts.append(f"mode=GF({q})")
    else:
        parts.append(f"mode=infinite({cert.mode.p})")
    if cert.nonprime is not None:
        shape = "*".join(f"W{len(vs)}" for vs in cert.nonprime.factors)
        parts.append(f"nonprime=member{cert.nonprime.member_index + 1}:{shape}")
    elif cert.assumed_nonprime:
        parts.append("nonprime=assumed")
    else:
        parts.append("nonprime=none")
    for r in cert.reports:
        parts.append(f"catalog.{r.entry.name.replace(' ', '')}={r.verdict.holds}")
    parts.append(f"truncation={cert.truncation}")
    parts.append(f"ext_bound={cert.ext_bound}")
    parts.append(f"budget={cert.budget}")
    return " ".join(parts)
