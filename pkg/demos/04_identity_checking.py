"""Two identity-checking oracles, plus Lie chains and the Engel test.

The exhaustive checker enumerates every assignment (sound "yes" only on
a full sweep); the generic checker evaluates at symbolic coordinates and
is the tool of choice when the algebra is too large to enumerate.
"""

from pivar import (
    IdentitySystem,
    gf_make,
    field_algebra,
    is_engel,
    is_identity_exhaustive,
    is_identity_generic,
    is_lie_nilpotent,
    make_A,
    make_B,
    make_C,
    parse_poly,
    satisfies_system,
)

F2 = gf_make(2, 1)
AF = make_A(field_algebra(F2))

# [x,y][z,t] holds on A(F): commutators live in the annihilated slot.
f = parse_poly("[x,y]*[z,t]", 2)
v = is_identity_exhaustive(AF, f)
print(f"[x,y][z,t] on A(GF(2)): {v.holds} after {v.evaluations} "
      f"evaluations (full sweep of 4^4 tuples)")

g = parse_poly("[x,y]", 2)
v = is_identity_exhaustive(AF, g)
print(f"[x,y] on A(GF(2)): {v.holds}, witness "
      f"{v.witness.describe(AF)}")

# A(C_6) has 2^126 elements, far beyond enumeration; the generic checker
# still answers instantly and specializes its "no" to a field point.
AC6 = make_A(make_C(6, F2))
h = parse_poly("[x^2,y]", 2)
v = is_identity_generic(AC6, h, "finite-q")
print(f"\n[x^2,y] on A(C_6) (dim {AC6.dim}): {v.holds}, specialized "
      f"witness {v.witness.describe(AC6)}")

# Two semantics: x^2 + x vanishes at every point of GF(2) but is not a
# formal identity, so it holds finitely and fails over infinite fields.
idem = field_algebra(F2)
poly = parse_poly("x^2 + x", 2)
print(f"\nx^2 + x on the one-dimensional idempotent algebra:")
print(f"  finite-q semantics:        "
      f"{is_identity_generic(idem, poly, 'finite-q').holds}")
print(f"  infinite-char-p semantics: "
      f"{is_identity_generic(idem, poly, 'infinite-char-p').holds}")

# Lower Lie chain: dims of L_1 = A, L_{k+1} = [L_k, A].
for algebra, name in ((make_C(2, F2), "C_2"), (AF, "A(GF(2))"),
                      (make_A(make_C(3, F2)), "A(C_3)")):
    res = is_lie_nilpotent(algebra)
    verdict = (f"Lie nilpotent of class {res.nil_class}" if res.nilpotent
               else "NOT Lie nilpotent")
    print(f"\n{name}: chain {res.chain} -> {verdict}")

# Engel: every adjoint map must be nilpotent.
B = make_B(F2, gf_make(2, 2), 1)
v = is_engel(B)
print(f"\nB(GF(2),GF(4),sigma) Engel test: {v.holds}; ad(y) fails to be "
      f"nilpotent at y = {v.witness.y!r}")

# Systems: the one-sided identities defining the variety that A(C) lives
# in, checked under both semantics.
p = 2
system = IdentitySystem((parse_poly("[y,z]x", p), parse_poly("y^2x", p)))
for semantics in ("finite-q", "infinite-char-p"):
    res = satisfies_system(make_A(make_C(4, F2)), system, semantics)
    print(f"A(C_4) satisfies {{[y,z]x, y^2x}} under {semantics}: "
          f"{res.holds}")
