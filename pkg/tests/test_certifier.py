"""Certifier: witness matching, catalog assembly, end-to-end verdicts."""

import pytest

from pivar.errors import CharMismatch, InvalidSigma, ParseError
from pivar.fields import gf_make
from pivar.freealg import NcPoly, commutator, lie_word
from pivar.idcheck import (
    IdentitySystem,
    SEM_FINITE,
    recheck_witness,
    satisfies_system,
)
from pivar.certifier import (
    Bounds,
    FieldMode,
    build_catalog,
    certify,
    engel_power_member,
    engel_shortcut_rejection,
    find_nonprime_witness,
    render_certificate,
    render_machine,
)

F2 = gf_make(2, 1)


def power_central(p, e=2):
    return commutator(NcPoly(p, {("x",) * e: 1}), NcPoly.var("y", p))


def w3w3(p):
    return (lie_word(3, ["a", "b", "c"], p)
            * lie_word(3, ["d", "e", "f"], p))


def w2w2(p):
    return (commutator(NcPoly.var("x1", p), NcPoly.var("x2", p))
            * commutator(NcPoly.var("x3", p), NcPoly.var("x4", p)))


class TestFieldMode:
    def test_parse(self):
        assert FieldMode.parse("GF(2)") == FieldMode.finite(2)
        assert FieldMode.parse("GF(3^2)") == FieldMode.finite(3, 2)
        assert FieldMode.parse("infinite(5)") == FieldMode.infinite(5)
        assert FieldMode.parse("char(2)") == FieldMode.infinite(2)

    def test_parse_rejects(self):
        with pytest.raises(ParseError):
            FieldMode.parse("GF(6)")
        with pytest.raises(ParseError):
            FieldMode.parse("rational")


class TestNonprimeWitness:
    def test_w3_times_w3(self):
        w = find_nonprime_witness(IdentitySystem((w3w3(2),)))
        assert w is not None
        assert [len(f) for f in w.factors] == [3, 3]

    def test_w2_times_w2(self):
        w = find_nonprime_witness(IdentitySystem((w2w2(3),)))
        assert w is not None
        assert [len(f) for f in w.factors] == [2, 2]
        assert w.factors == (("x1", "x2"), ("x3", "x4"))

    def test_single_commutator_is_not_enough(self):
        assert find_nonprime_witness(
            IdentitySystem((power_central(2),))) is None
        w2 = commutator(NcPoly.var("x", 2), NcPoly.var("y", 2))
        assert find_nonprime_witness(IdentitySystem((w2,))) is None

    def test_scaled_product_matches(self):
        f = w2w2(5).scale(3)
        w = find_nonprime_witness(IdentitySystem((f,)))
        assert w is not None

    def test_shared_variables_rejected(self):
        # same variable in both factors: blocks never separate
        x, y, z = (NcPoly.var(v, 2) for v in "xyz")
        f = commutator(x, y) * commutator(x, z)
        assert find_nonprime_witness(IdentitySystem((f,))) is None

    def test_triple_product(self):
        p = 2
        f = (commutator(NcPoly.var("a", p), NcPoly.var("b", p))
             * commutator(NcPoly.var("c", p), NcPoly.var("d", p))
             * commutator(NcPoly.var("e", p), NcPoly.var("f", p)))
        w = find_nonprime_witness(IdentitySystem((f,)))
        assert w is not None
        assert len(w.factors) == 3

    def test_member_index_scanning(self):
        system = IdentitySystem((power_central(2), w3w3(2)))
        w = find_nonprime_witness(system)
        assert w.member_index == 1


class TestCatalog:
    def test_infinite_catalog(self):
        entries, blockers = build_catalog(FieldMode.infinite(2), 3, 4)
        assert [e.name for e in entries] == ["A(C)", "A(C)*"]
        assert not blockers
        assert entries[0].truncation == 3

    def test_finite_catalog_e2(self):
        entries, _ = build_catalog(FieldMode.finite(2), 3, 2)
        names = [e.name for e in entries]
        assert names == ["A(GF(2))", "A(GF(2))*", "A(C)", "A(C)*",
                         "B(GF(2),GF(2^2),sigma^1)"]

    def test_finite_catalog_e1_has_no_b(self):
        entries, _ = build_catalog(FieldMode.finite(2), 3, 1)
        assert all(not e.name.startswith("B(") for e in entries)

    def test_ext_bound_is_prime_power_filtered(self):
        entries, _ = build_catalog(FieldMode.finite(2), 3, 6)
        exts = {e.algebra.dim // 2 for e in entries
                if e.name.startswith("B(")}
        assert exts == {2, 3, 4, 5}   # prime powers up to 6, as [G:F]=dim/2

    def test_non_engel_flags(self):
        entries, _ = build_catalog(FieldMode.finite(2), 2, 2)
        flags = {e.name: e.non_engel for e in entries}
        assert flags["A(GF(2))"] and flags["B(GF(2),GF(2^2),sigma^1)"]
        assert not flags["A(C)"]


class TestEngelShortcut:
    def test_member_detection(self):
        # [x^2, y] = -[y, x^2], so the matched shape is [a, b^2] with a=y
        system = IdentitySystem((power_central(2, 2), w3w3(2)))
        hit = engel_power_member(system)
        assert hit == (0, "y", "x", 2)
        # [x^3, y] over GF(2): 3 is not a 2-power
        none = engel_power_member(
            IdentitySystem((commutator(NcPoly(2, {("x",) * 3: 1}),
                                       NcPoly.var("y", 2)),)))
        assert none is None

    def test_shortcut_agrees_with_direct_check(self):
        system = IdentitySystem((power_central(2, 2), w3w3(2)))
        member = engel_power_member(system)
        entries, _ = build_catalog(FieldMode.finite(2), 6, 4)
        for entry in entries:
            if not entry.non_engel:
                continue
            short = engel_shortcut_rejection(entry, system, member, 10 ** 6)
            direct = satisfies_system(entry.algebra, system, SEM_FINITE)
            assert short is not None
            assert short.holds == "no" == direct.holds
            assert recheck_witness(entry.algebra,
                                   system.polys[short.failing_index],
                                   short.witness)


class TestCertify:
    def test_paper_example_finite(self):
        system = IdentitySystem((power_central(2), w3w3(2)))
        cert = certify(FieldMode.finite(2), system)
        assert cert.verdict == "LIE_NILPOTENT"
        assert cert.nonprime is not None
        assert cert.truncation == 6
        # every rejection witness must replay
        for report in cert.reports:
            assert report.verdict.holds == "no"
            witness = report.verdict.witness
            poly = system.polys[report.verdict.failing_index]
            assert recheck_witness(report.entry.algebra, poly, witness)

    def test_paper_example_infinite(self):
        system = IdentitySystem((power_central(2), w3w3(2)))
        cert = certify(FieldMode.infinite(2), system)
        assert cert.verdict == "LIE_NILPOTENT"
        assert len(cert.reports) == 2

    def test_negative_control(self):
        p = 2
        y, z, x = (NcPoly.var(v, p) for v in "yzx")
        system = IdentitySystem((commutator(y, z) * x, y * y * x, w2w2(p)))
        cert = certify(FieldMode.finite(2), system)
        assert cert.verdict == "NOT_LIE_NILPOTENT"
        assert cert.witness_entry.entry.name == "A(C)"
        assert cert.evidence["kind"] == "truncation-class-growth"
        assert cert.evidence["classes"] == [2, 3, 4, 5]
        # soundness: re-run the winning membership
        again = satisfies_system(cert.witness_entry.entry.algebra, system,
                                 SEM_FINITE)
        assert again.is_yes

    def test_inconclusive_without_witness(self):
        cert = certify(FieldMode.finite(2),
                       IdentitySystem((power_central(2),)))
        assert cert.verdict == "INCONCLUSIVE"
        assert any("non-primeness" in b for b in cert.blockers)

    def test_assume_nonprime_flag(self):
        cert = certify(FieldMode.finite(2),
                       IdentitySystem((power_central(2),)),
                       assume_nonprime=True)
        assert cert.verdict == "LIE_NILPOTENT"
        assert cert.assumed_nonprime

    def test_char_mismatch(self):
        with pytest.raises(CharMismatch):
            certify(FieldMode.finite(3), IdentitySystem((power_central(2),)))

    def test_oversized_sweep_blocks(self):
        # an extension beyond the field-size cap cannot silently vanish:
        # the sweep is incomplete, so the verdict degrades to INCONCLUSIVE
        system = IdentitySystem((power_central(2), w3w3(2)))
        cert = certify(FieldMode.finite(2), system, Bounds(ext_bound=32))
        assert cert.verdict == "INCONCLUSIVE"
        assert any("cap" in b for b in cert.blockers)

    def test_monotone_in_bounds(self):
        system = IdentitySystem((power_central(2), w3w3(2)))
        base = certify(FieldMode.finite(2), system,
                       Bounds(truncation=6, ext_bound=2))
        larger = certify(FieldMode.finite(2), system,
                         Bounds(truncation=8, ext_bound=4))
        assert base.verdict == larger.verdict == "LIE_NILPOTENT"
        neg = IdentitySystem((
            commutator(NcPoly.var("y", 2), NcPoly.var("z", 2))
            * NcPoly.var("x", 2),
            NcPoly(2, {("y", "y", "x"): 1}),
            w2w2(2)))
        small = certify(FieldMode.finite(2), neg, Bounds(truncation=4))
        big = certify(FieldMode.finite(2), neg, Bounds(truncation=6))
        assert small.verdict == big.verdict == "NOT_LIE_NILPOTENT"


class TestRendering:
    def test_sections_present(self):
        system = IdentitySystem((power_central(2), w3w3(2)))
        cert = certify(FieldMode.finite(2), system)
        text = render_certificate(cert)
        for section in ("MODE", "SIGMA", "NONPRIME-WITNESS", "CATALOG",
                        "VERDICT", "BOUNDS"):
            assert section in text
        assert "LIE_NILPOTENT" in text

    def test_machine_line(self):
        system = IdentitySystem((power_central(2), w3w3(2)))
        cert = certify(FieldMode.finite(2), system)
        line = render_machine(cert)
        assert line.startswith("verdict=LIE_NILPOTENT")
        assert "mode=GF(2)" in line
        assert "\n" not in line

    def test_deterministic(self):
        system = IdentitySystem((power_central(2), w3w3(2)))
        a = render_certificate(certify(FieldMode.finite(2), system))
        b = render_certificate(certify(FieldMode.finite(2), system))
        assert a == b
