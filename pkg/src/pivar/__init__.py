"""Polynomial-identity machinery for associative algebras over GF(p),
with a Lie-nilpotency certifier built on the almost-Lie-nilpotent
catalog of non-prime varieties."""

from .fields import FieldSpec, Scalar, frobenius_power, gf_make, subfield_lattice
from .genpoly import GenPoly, GenPool, generic_poly_arith
from .freealg import (
    CommTerm,
    DegreeSets,
    NcPoly,
    PlainTerm,
    commutator,
    degree_sets,
    engel_polynomial,
    full_linearization,
    lie_word,
    multihomogeneous_components,
    rep_to_poly,
    substitute,
)
from .algebras import (
    AlgElem,
    StructAlgebra,
    evaluate_poly,
    field_algebra,
    from_structure_constants,
    generic_element,
    make_A,
    make_B,
    make_C,
    matrix_algebra,
    opposite,
    parse_algebra_file,
    valid_sigmas,
)
from .idcheck import (
    CheckVerdict,
    IdentitySystem,
    SystemVerdict,
    Witness,
    is_engel,
    is_identity_exhaustive,
    is_identity_generic,
    is_lie_nilpotent,
    lie_lower_chain,
    satisfies_system,
)
from .tideal import Membership, SpanBasis, consequence_basis, tideal_member
from .certifier import (
    Bounds,
    Certificate,
    FieldMode,
    certify,
    find_nonprime_witness,
    render_certificate,
    render_machine,
)
from .parsing import parse_poly, parse_representation

__version__ = "0.1.0"

__all__ = [
    "AlgElem", "Bounds", "Certificate", "CheckVerdict", "CommTerm",
    "DegreeSets", "FieldMode", "FieldSpec", "GenPoly", "GenPool",
    "IdentitySystem", "Membership", "NcPoly", "PlainTerm", "Scalar",
    "SpanBasis", "StructAlgebra", "SystemVerdict", "Witness",
    "certify", "commutator", "consequence_basis", "degree_sets",
    "engel_polynomial", "evaluate_poly", "field_algebra",
    "find_nonprime_witness", "frobenius_power", "from_structure_constants",
    "full_linearization", "generic_element", "generic_poly_arith",
    "gf_make", "is_engel", "is_identity_exhaustive", "is_identity_generic",
    "is_lie_nilpotent", "lie_lower_chain", "lie_word", "make_A", "make_B",
    "make_C", "matrix_algebra", "multihomogeneous_components", "opposite",
    "parse_algebra_file", "parse_poly", "parse_representation",
    "render_certificate", "render_machine", "rep_to_poly",
    "satisfies_system", "subfield_lattice", "substitute", "tideal_member",
    "valid_sigmas",
]
