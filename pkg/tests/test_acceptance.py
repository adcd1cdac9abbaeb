"""Acceptance suite: one test per criterion, at stated exact tolerances.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS line
per criterion with its runtime.  All arithmetic is exact, so every
comparison is equality; the runtime limits come with each criterion.
"""

import time

import pytest

from pivar.fields import gf_make
from pivar.freealg import (
    CommTerm,
    NcPoly,
    commutator,
    degree_sets,
    engel_polynomial,
    lie_word,
)
from pivar.algebras import (
    evaluate_poly,
    field_algebra,
    make_A,
    make_B,
    make_C,
    opposite,
    valid_sigmas,
)
from pivar.idcheck import (
    IdentitySystem,
    SEM_FINITE,
    SEM_INFINITE,
    is_engel,
    is_identity_exhaustive,
    is_identity_generic,
    is_lie_nilpotent,
    lie_lower_chain,
    recheck_witness,
    satisfies_system,
)
from pivar.tideal import tideal_member
from pivar.certifier import Bounds, FieldMode, certify

F2 = gf_make(2, 1)
F3 = gf_make(3, 1)


class _Timer:
    def __init__(self, number: int, limit: float, label: str):
        self.number = number
        self.limit = limit
        self.label = label

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        status = "PASS" if exc_type is None else "FAIL"
        print(f"ACCEPTANCE {self.number}: {status} "
              f"({elapsed:.3f}s < {self.limit}s) - {self.label}")
        if exc_type is None:
            assert elapsed < self.limit, (
                f"criterion {self.number} exceeded its runtime limit: "
                f"{elapsed:.3f}s >= {self.limit}s")
        return False


def unit(algebra, label):
    coords = [0] * algebra.dim
    coords[algebra.labels.index(label)] = 1
    return algebra.element(coords)


def test_c01_degree_set_reproduction():
    with _Timer(1, 0.1, "degree sets of x[x,y]x^2 + y^5[y,z]"):
        rep = [
            CommTerm(1, ("x",), "x", "y", ("x", "x")),
            CommTerm(1, ("y",) * 5, "y", "z", ()),
        ]
        sets = degree_sets(rep, ["x", "y"])
        assert sets.s_set == frozenset({4, 1, 0, 6})
        assert sets.d_set == frozenset({(2, 2), (1, 3), (1, 0), (0, 1),
                                        (0, 0), (6, 0), (5, 1)})


def test_c02_engel_expansion():
    with _Timer(2, 1.0, "Engel recursive = closed; p-power collapse"):
        for p in (2, 3, 5):
            for n in range(1, 9):
                rec, closed = engel_polynomial(n, "x", "y", p)
                assert rec == closed
        for p, n in ((2, 2), (2, 4), (3, 3)):
            _, closed = engel_polynomial(n, "x", "y", p)
            ypow = NcPoly.word(("y",) * n, p)
            assert closed == commutator(NcPoly.var("x", p), ypow)


def test_c03_example_witness():
    with _Timer(3, 1.0, "A(C) witness with the (p-1)! coefficient"):
        # p = 2: A(C_3), x = (c1, c2), y = (c3, 0)
        a2 = make_A(make_C(3, F2))
        x = unit(a2, "(c1,0)") + unit(a2, "(0,c2)")
        y = unit(a2, "(c3,0)")
        xx = NcPoly(2, {("x", "x"): 1})
        assert evaluate_poly(xx, a2, {"x": x}) == unit(a2, "(0,c1c2)")
        val = evaluate_poly(commutator(xx, NcPoly.var("y", 2)), a2,
                            {"x": x, "y": y})
        assert val == unit(a2, "(0,c1c2c3)")
        assert not val.is_zero()
        # p = 3: A(C_4), x = (c1+c2, c3), y = (c4, 0)
        a3 = make_A(make_C(4, F3))
        x = unit(a3, "(c1,0)") + unit(a3, "(c2,0)") + unit(a3, "(0,c3)")
        y = unit(a3, "(c4,0)")
        cube = NcPoly(3, {("x",) * 3: 1})
        assert (evaluate_poly(cube, a3, {"x": x})
                == unit(a3, "(0,c1c2c3)").scale(2))   # (p-1)! = 2
        val = evaluate_poly(commutator(cube, NcPoly.var("y", 3)), a3,
                            {"x": x, "y": y})
        assert not val.is_zero()


def test_c04_lemma_a_instances():
    with _Timer(4, 10.0, "A(C_N) satisfies the one-sided systems"):
        for p in (2, 3):
            field = gf_make(p, 1)
            y, z, x = (NcPoly.var(v, p) for v in "yzx")
            ypow = NcPoly(p, {("y",) * p: 1})
            system = IdentitySystem((commutator(y, z) * x, ypow * x))
            dual = IdentitySystem((x * commutator(y, z), x * ypow))
            for n in (p + 1, p + 2):
                ac = make_A(make_C(n, field))
                for semantics in (SEM_FINITE, SEM_INFINITE):
                    assert satisfies_system(ac, system, semantics).is_yes
                    assert satisfies_system(opposite(ac), dual,
                                            semantics).is_yes


def test_c05_tideal_lemma_instance():
    with _Timer(5, 60.0, "W3*W3 in T({W4}) with exact certificate"):
        w4 = lie_word(4, ["x1", "x2", "x3", "x4"], 2)
        f = (lie_word(3, ["y1", "y2", "y3"], 2)
             * lie_word(3, ["y4", "y5", "y6"], 2))
        result = tideal_member(f, [w4], degree_bound=6, mode="multilinear")
        assert result.member
        assert result.expand_certificate() == f


def test_c06_catalog_structure():
    with _Timer(6, 30.0, "chains, Engel rejections, class growth"):
        for field in (F2, F3):
            res = is_lie_nilpotent(make_A(field_algebra(field)))
            assert not res.nilpotent
            assert res.chain[-1] == 1
        b = make_B(F2, gf_make(2, 2), 1)
        for a in (make_A(field_algebra(F2)), make_A(field_algebra(F3)), b):
            verdict = is_engel(a)
            assert verdict.is_no
            assert recheck_witness(a, None, verdict.witness)
        classes = []
        for n in (1, 2, 3, 4):
            res = is_lie_nilpotent(make_A(make_C(n, F2)))
            assert res.nilpotent
            classes.append(res.nil_class)
        assert all(a < b for a, b in zip(classes, classes[1:]))


def test_c07_valid_sigmas():
    with _Timer(7, 1.0, "twist exponent enumeration"):
        assert valid_sigmas(F2, gf_make(2, 2)) == [1]
        assert valid_sigmas(F2, gf_make(2, 4)) == [2]
        assert valid_sigmas(F2, gf_make(2, 6)) == []
        assert valid_sigmas(F3, gf_make(3, 2)) == [1]


def test_c08_certifier_end_to_end():
    with _Timer(8, 60.0, "the worked certification, both modes"):
        xx = NcPoly(2, {("x", "x"): 1})
        sigma = IdentitySystem((
            commutator(xx, NcPoly.var("y", 2)),
            lie_word(3, ["a", "b", "c"], 2)
            * lie_word(3, ["d", "e", "f"], 2)))
        for mode in (FieldMode.finite(2), FieldMode.infinite(2)):
            cert = certify(mode, sigma)
            assert cert.verdict == "LIE_NILPOTENT"
        y, z, x = (NcPoly.var(v, 2) for v in "yzx")
        control = IdentitySystem((
            commutator(y, z) * x,
            NcPoly(2, {("y", "y", "x"): 1}),
            commutator(NcPoly.var("x1", 2), NcPoly.var("x2", 2))
            * commutator(NcPoly.var("x3", 2), NcPoly.var("x4", 2))))
        cert = certify(FieldMode.finite(2), control)
        assert cert.verdict == "NOT_LIE_NILPOTENT"
        assert cert.witness_entry.entry.name == "A(C)"


def _agreement_corpus(p):
    """20 two-variable polynomials: exhaustive enumeration stays within
    the default budget on every tested algebra."""
    x = NcPoly.var("x", p)
    y = NcPoly.var("y", p)
    xx = NcPoly(p, {("x", "x"): 1})
    yy = NcPoly(p, {("y", "y"): 1})
    return [
        commutator(x, y),
        commutator(xx, y),
        commutator(x, yy),
        commutator(x, y) * commutator(x, y),
        commutator(x, y) * x,
        x * commutator(x, y),
        xx,
        xx * y,
        y * xx,
        NcPoly(p, {("x",) * p: 1}),
        NcPoly(p, {("x",) * (p + 1): 1}),
        x * y + y * x,
        x * y - y * x + xx,
        engel_polynomial(2, "x", "y", p)[1],
        engel_polynomial(3, "x", "y", p)[1],
        xx * yy - yy * xx,
        commutator(commutator(x, y), y),
        x + y,
        xx + x,
        NcPoly(p, {("x", "y", "x"): 1, ("y", "x", "y"): 1}),
    ]


def test_c09_oracle_agreement():
    with _Timer(9, 120.0, "exhaustive vs generic finite-q, 20 polys"):
        algebras = [
            make_A(field_algebra(F2)),
            make_C(2, F2),
            make_C(3, F2),
            make_B(F2, gf_make(2, 2), 1),
        ]
        corpus = _agreement_corpus(2)
        assert len(corpus) == 20
        for a in algebras:
            for f in corpus:
                exhaustive = is_identity_exhaustive(a, f)
                generic = is_identity_generic(a, f, SEM_FINITE)
                assert exhaustive.definite, repr(f)
                assert exhaustive.holds == generic.holds, (a, repr(f))


def _transfer_corpus(p):
    x, y, z, t = (NcPoly.var(v, p) for v in "xyzt")
    xx = NcPoly(p, {("x", "x"): 1})
    return [
        commutator(x, y),
        commutator(xx, y),
        commutator(y, z) * x,
        x * commutator(y, z),
        commutator(x, y) * commutator(z, t),
        xx * y,
        NcPoly(p, {("y",) * p: 1}) * x,
        lie_word(3, ["x", "y", "z"], p),
        lie_word(4, ["x", "y", "z", "t"], p),
        xx * y + y * xx,
    ]


def test_c10_truncation_transfer():
    with _Timer(10, 120.0, "generic verdicts stable for N in {4,5,6}"):
        for p in (2, 3):
            field = gf_make(p, 1)
            corpus = _transfer_corpus(p)
            assert len(corpus) == 10
            assert all(f.total_degree() <= 4 for f in corpus)
            for f in corpus:
                for semantics in (SEM_FINITE, SEM_INFINITE):
                    verdicts = {
                        is_identity_generic(make_A(make_C(n, field)), f,
                                            semantics).holds
                        for n in (4, 5, 6)}
                    assert len(verdicts) == 1, (p, repr(f), semantics)
