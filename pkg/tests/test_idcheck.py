"""Identity checking: exhaustive vs generic, Lie chains, Engel tests."""

import random

import pytest

from pivar.fields import gf_make
from pivar.freealg import NcPoly, commutator, lie_word
from pivar.algebras import (
    evaluate_poly,
    field_algebra,
    make_A,
    make_B,
    make_C,
    matrix_algebra,
    opposite,
)
from pivar.idcheck import (
    IdentitySystem,
    SEM_FINITE,
    SEM_INFINITE,
    FormalWitness,
    Witness,
    coords_by_weight,
    is_engel,
    is_identity_exhaustive,
    is_identity_generic,
    is_lie_nilpotent,
    lie_lower_chain,
    recheck_witness,
    satisfies_system,
)

F2 = gf_make(2, 1)
F3 = gf_make(3, 1)
F4 = gf_make(2, 2)

X2 = NcPoly.var("x", 2)
Y2 = NcPoly.var("y", 2)
Z2 = NcPoly.var("z", 2)
T2 = NcPoly.var("t", 2)


def AF(field=F2):
    return make_A(field_algebra(field))


class TestExhaustive:
    def test_bracket_product_identity_on_af(self):
        f = commutator(X2, Y2) * commutator(Z2, T2)
        verdict = is_identity_exhaustive(AF(), f)
        assert verdict.is_yes
        assert verdict.evaluations == 4 ** 4   # full enumeration of 2^8

    def test_bracket_fails_on_af_with_witness(self):
        f = commutator(X2, Y2)
        verdict = is_identity_exhaustive(AF(), f)
        assert verdict.is_no
        assert recheck_witness(AF(), f, verdict.witness)
        # the expected witness shape: an idempotent against the second slot
        value = evaluate_poly(f, AF(), verdict.witness.assignment)
        assert not value.is_zero()

    def test_zero_algebra(self):
        zero = make_C(1, F2)     # c1^2 = 0: every product vanishes
        f = NcPoly.word(("x", "y"), 2)
        assert is_identity_exhaustive(zero, f).is_yes

    def test_budget_exhaustion_is_not_yes(self):
        a = make_A(make_C(3, F2))     # 2^14 elements per variable
        f = commutator(X2, Y2) * commutator(Z2, T2)
        verdict = is_identity_exhaustive(a, f, budget=1000)
        assert verdict.holds == "budget_exceeded"
        assert verdict.evaluations == 1000

    def test_weight_order_is_basis_biased(self):
        elems = list(coords_by_weight(3, 2))
        assert elems[0] == (0, 0, 0)
        assert set(elems[1:4]) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
        assert len(elems) == 8

    def test_multilinear_shortcut_agrees(self):
        # basis-tuple enumeration is sound exactly for multilinear polys
        b = make_B(F2, F4, 1)
        polys = [commutator(X2, Y2) * commutator(Z2, T2),
                 commutator(X2, Y2),
                 lie_word(3, ["x", "y", "z"], 2)]
        for f in polys:
            full = is_identity_exhaustive(b, f)
            fast = is_identity_exhaustive(b, f, multilinear_shortcut=True)
            assert full.holds == fast.holds
            assert fast.evaluations <= full.evaluations
        # the shortcut must not engage on non-multilinear input: the
        # full element sweep runs either way
        c2 = make_C(2, F2)
        g = commutator(NcPoly(2, {("x", "x"): 1}),
                       NcPoly(2, {("y", "y"): 1}))
        full = is_identity_exhaustive(c2, g)
        fast = is_identity_exhaustive(c2, g, multilinear_shortcut=True)
        assert full.is_yes and fast.is_yes
        assert full.evaluations == fast.evaluations == c2.num_elements ** 2


class TestGeneric:
    def test_commutativity_of_c(self):
        f = commutator(X2, Y2)
        verdict = is_identity_generic(make_C(2, F2), f, SEM_INFINITE)
        assert verdict.is_yes

    def test_power_central_fails_on_ac3(self):
        a = make_A(make_C(3, F2))
        f = commutator(NcPoly(2, {("x", "x"): 1}), Y2)
        verdict = is_identity_generic(a, f, SEM_INFINITE)
        assert verdict.is_no
        assert isinstance(verdict.witness, Witness)
        assert recheck_witness(a, f, verdict.witness)
        # witness matches the worked shape: x with both slots on distinct
        # generators, y a plain first-slot generator
        value = evaluate_poly(f, a, verdict.witness.assignment)
        nz = [i for i, c in enumerate(value.coords) if c]
        assert all(i >= a.dim // 2 for i in nz)   # lands in the second slot

    def test_product_identity_on_square_zero(self):
        a = make_C(1, F3)
        f = NcPoly.word(("x", "y"), 3)
        assert is_identity_generic(a, f, SEM_INFINITE).is_yes
        assert is_identity_generic(a, f, SEM_FINITE).is_yes

    def test_formal_vs_finite_semantics(self):
        # x^2 + x vanishes pointwise over GF(2) but not formally; on the
        # 1-dim idempotent algebra this separates the two semantics
        a = field_algebra(F2)
        f = NcPoly(2, {("x", "x"): 1, ("x",): 1})
        assert is_identity_generic(a, f, SEM_FINITE).is_yes
        verdict = is_identity_generic(a, f, SEM_INFINITE)
        assert verdict.is_no
        assert isinstance(verdict.witness, FormalWitness)
        assert recheck_witness(a, f, verdict.witness)


class TestAgreement:
    """Exhaustive and generic finite-q checking must agree."""

    def corpus(self, p):
        x = NcPoly.var("x", p)
        y = NcPoly.var("y", p)
        z = NcPoly.var("z", p)
        xx = NcPoly(p, {("x", "x"): 1})
        polys = [
            commutator(x, y),
            commutator(x, y) * commutator(x, y),
            commutator(xx, y),
            x * y - y * x,
            x * y + y * x,
            xx,
            NcPoly(p, {("x",) * p: 1}),
            commutator(commutator(x, y), z),
            x * y * z,
            commutator(x, y) * z,
            z * commutator(x, y),
            xx * y,
            y * xx,
            x + y,
            commutator(x, y) + commutator(y, z),
            NcPoly(p, {("x", "y"): 1, ("y", "x"): 1, ("x", "x"): 1}),
            lie_word(3, ["x", "y", "z"], p),
            NcPoly(p, {("x", "y", "x"): 1}),
            NcPoly(p, {("x",): 1}),
            xx + x,
        ]
        return polys

    @pytest.mark.parametrize("algebra_factory,p", [
        (lambda: AF(), 2),
        (lambda: make_C(2, F2), 2),
        (lambda: make_C(3, F2), 2),
        (lambda: make_B(F2, F4, 1), 2),
    ])
    def test_corpus_agreement(self, algebra_factory, p):
        a = algebra_factory()
        for f in self.corpus(p):
            n_vars = max(1, len(f.variables()))
            if a.num_elements ** n_vars > 2 ** 16:
                continue
            exhaustive = is_identity_exhaustive(a, f, budget=2 ** 16)
            generic = is_identity_generic(a, f, SEM_FINITE)
            assert exhaustive.definite
            assert exhaustive.holds == generic.holds, repr(f)


class TestExtensionFieldAgreement:
    """Algebras declared over GF(4) run through restricted coordinates;
    the two oracles must still agree there."""

    def test_af4_corpus(self):
        a = make_A(field_algebra(F4))     # dim 4 over GF(2)
        f4_polys = [
            commutator(X2, Y2),
            commutator(NcPoly(2, {("x", "x"): 1}), Y2),
            commutator(X2, Y2) * commutator(Z2, T2),
            NcPoly(2, {("x", "x"): 1, ("x",): 1}),
            NcPoly(2, {("x", "x", "x", "x"): 1, ("x",): 1}),
        ]
        for f in f4_polys:
            n_vars = max(1, len(f.variables()))
            if a.num_elements ** n_vars > 2 ** 16:
                continue
            exhaustive = is_identity_exhaustive(a, f, budget=2 ** 16)
            generic = is_identity_generic(a, f, SEM_FINITE)
            assert exhaustive.definite
            assert exhaustive.holds == generic.holds, repr(f)

    def test_x4_plus_x_on_gf4(self):
        # x^4 + x vanishes on every element of GF(4) but x^2 + x does not
        a = field_algebra(F4)
        fours = NcPoly(2, {("x",) * 4: 1, ("x",): 1})
        twos = NcPoly(2, {("x", "x"): 1, ("x",): 1})
        assert is_identity_exhaustive(a, fours).is_yes
        assert is_identity_generic(a, fours, SEM_FINITE).is_yes
        assert is_identity_exhaustive(a, twos).is_no
        assert is_identity_generic(a, twos, SEM_FINITE).is_no


class TestLieChain:
    def test_c2_chain(self):
        assert lie_lower_chain(make_C(2, F2)) == [3, 0]

    def test_af_chain(self):
        res = is_lie_nilpotent(AF())
        assert res.chain == [2, 1, 1]
        assert not res.nilpotent
        assert res.stable_basis.shape[0] == 1

    def test_truncation_classes_strictly_increase(self):
        classes = []
        for n in (1, 2, 3, 4):
            res = is_lie_nilpotent(make_A(make_C(n, F2)))
            assert res.nilpotent
            classes.append(res.nil_class)
        assert classes == sorted(set(classes))
        assert classes == [2, 3, 4, 5]

    def test_chain_monotone_and_stabilizes(self):
        for a in (AF(), make_B(F2, F4, 1), make_C(3, F3),
                  matrix_algebra(2, F2)):
            chain = lie_lower_chain(a)
            assert all(x >= y for x, y in zip(chain, chain[1:]))
            assert len(chain) <= a.dim + 2

    def test_class_certifies_identity(self):
        # class n means W_n = 0 holds; NotLN means every W_k fails
        for a in (make_C(2, F3), make_A(make_C(1, F2)),
                  make_A(make_C(2, F2))):
            res = is_lie_nilpotent(a)
            assert res.nilpotent
            variables = [f"x{i}" for i in range(res.nil_class)]
            w = lie_word(res.nil_class, variables, a.p)
            assert is_identity_generic(a, w, SEM_FINITE).is_yes
        for a in (AF(), make_B(F2, F4, 1)):
            res = is_lie_nilpotent(a)
            assert not res.nilpotent
            for k in range(2, a.dim + 2):
                variables = [f"x{i}" for i in range(k)]
                w = lie_word(k, variables, a.p)
                verdict = is_identity_generic(a, w, SEM_FINITE)
                assert verdict.is_no
                assert recheck_witness(a, w, verdict.witness)


class TestEngel:
    def test_af_not_engel(self):
        verdict = is_engel(AF())
        assert verdict.is_no
        assert recheck_witness(AF(), None, verdict.witness)

    def test_af3_not_engel(self):
        a = AF(F3)
        verdict = is_engel(a)
        assert verdict.is_no
        assert recheck_witness(a, None, verdict.witness)

    def test_b_not_engel(self):
        b = make_B(F2, F4, 1)
        verdict = is_engel(b)
        assert verdict.is_no
        assert recheck_witness(b, None, verdict.witness)
        # the witness y acts invertibly on the second slot
        y = verdict.witness.y
        assert any(y.coords[:2])

    def test_commutative_is_engel(self):
        assert is_engel(make_C(3, F2)).is_yes

    def test_matrix_algebra_not_engel(self):
        verdict = is_engel(matrix_algebra(2, F2))
        assert verdict.is_no
        # e11 is the canonical witness: ad(e11) fixes e12
        assert verdict.witness.y.coords == (1, 0, 0, 0)

    def test_budget(self):
        a = make_A(make_C(3, F2))
        verdict = is_engel(a, budget=10)
        assert verdict.holds in ("no", "budget_exceeded")


class TestSystems:
    def lemma_a_system(self, p):
        y = NcPoly.var("y", p)
        z = NcPoly.var("z", p)
        x = NcPoly.var("x", p)
        ypow = NcPoly(p, {("y",) * p: 1})
        return IdentitySystem((commutator(y, z) * x, ypow * x))

    def dual_system(self, p):
        y = NcPoly.var("y", p)
        z = NcPoly.var("z", p)
        x = NcPoly.var("x", p)
        ypow = NcPoly(p, {("y",) * p: 1})
        return IdentitySystem((x * commutator(y, z), x * ypow))

    @pytest.mark.parametrize("p", [2, 3])
    @pytest.mark.parametrize("offset", [1, 2])
    def test_lemma_a_instances(self, p, offset):
        field = gf_make(p, 1)
        n = p + offset
        ac = make_A(make_C(n, field))
        for semantics in (SEM_FINITE, SEM_INFINITE):
            assert satisfies_system(ac, self.lemma_a_system(p),
                                    semantics).is_yes
            assert satisfies_system(opposite(ac), self.dual_system(p),
                                    semantics).is_yes

    def test_af_fails_power_central(self):
        f = commutator(NcPoly(2, {("x", "x"): 1}), Y2)
        system = IdentitySystem((f,))
        verdict = satisfies_system(AF(), system, SEM_FINITE)
        assert verdict.holds == "no"
        assert verdict.failing_index == 0
        assert recheck_witness(AF(), f, verdict.witness)

    def test_first_failing_reported(self):
        f1 = commutator(X2, Y2) * commutator(Z2, T2)   # holds on A(F)
        f2 = commutator(X2, Y2)                        # fails
        verdict = satisfies_system(AF(), IdentitySystem((f1, f2)), SEM_FINITE)
        assert verdict.holds == "no"
        assert verdict.failing_index == 1


class TestTruncationTransfer:
    """Generic verdicts on A(C_N) must not depend on N >= degree."""

    def corpus(self, p):
        x = NcPoly.var("x", p)
        y = NcPoly.var("y", p)
        z = NcPoly.var("z", p)
        xx = NcPoly(p, {("x", "x"): 1})
        return [
            commutator(x, y),
            commutator(xx, y),
            commutator(x, y) * z,
            z * commutator(x, y),
            commutator(x, y) * commutator(z, x),
            xx * y,
            NcPoly(p, {("x",) * p: 1}) * y,
            lie_word(3, ["x", "y", "z"], p),
            lie_word(4, ["x", "y", "z", "t"], p),
            xx * y + y * xx,
        ]

    @pytest.mark.parametrize("p", [2, 3])
    def test_verdicts_stable_across_truncations(self, p):
        field = gf_make(p, 1)
        for f in self.corpus(p):
            assert f.total_degree() <= 4
            verdicts = set()
            for n in (4, 5, 6):
                a = make_A(make_C(n, field))
                verdicts.add(
                    is_identity_generic(a, f, SEM_INFINITE).holds)
            assert len(verdicts) == 1, repr(f)
