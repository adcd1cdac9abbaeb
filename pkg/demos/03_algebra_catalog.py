"""The catalog algebras: C_N truncations, A(U), opposites, B(F,G,sigma).

These finite-dimensional structure-constant algebras are the witnesses
the certifier tests identity systems against.
"""

from pivar import (
    NcPoly,
    commutator,
    evaluate_poly,
    gf_make,
    field_algebra,
    make_A,
    make_B,
    make_C,
    opposite,
)

F2 = gf_make(2, 1)
F3 = gf_make(3, 1)


def unit(algebra, label):
    coords = [0] * algebra.dim
    coords[algebra.labels.index(label)] = 1
    return algebra.element(coords)


# C_N: commutative, square-zero generators; basis = square-free monomials.
C3 = make_C(3, F2)
print(f"C_3 over GF(2): dim {C3.dim}, basis {C3.labels}")
c1, c2 = C3.basis_element(0), C3.basis_element(1)
print(f"c1*c2 = {c1 * c2!r},  c1*c1 = {(c1 * c1)!r}")

# Over GF(2) every element of C squares to zero (that is var{[x,y], x^p}).
squares = {repr((C3.element_from_code(n) * C3.element_from_code(n)))
           for n in range(C3.num_elements)}
print(f"all {C3.num_elements} elements square to: {squares}")

# A(U) puts U in the two upper slots of a 2x2 row; the second slot kills
# everything from the left.
AC3 = make_A(C3)
print(f"\nA(C_3): dim {AC3.dim}")
x = unit(AC3, "(c1,0)") + unit(AC3, "(0,c2)")       # the pair (c1, c2)
y = unit(AC3, "(c3,0)")
xx = NcPoly(2, {("x", "x"): 1})
print(f"for x = (c1, c2):  x^2 = {evaluate_poly(xx, AC3, {'x': x})!r}")
val = evaluate_poly(commutator(xx, NcPoly.var("y", 2)), AC3,
                    {"x": x, "y": y})
print(f"[x^2, y] at y = (c3, 0): {val!r}  (nonzero: the algebra is not "
      f"p-power central)")

# The same computation over GF(3) shows the (p-1)! coefficient.
AC4 = make_A(make_C(4, F3))
x3 = unit(AC4, "(c1,0)") + unit(AC4, "(c2,0)") + unit(AC4, "(0,c3)")
cube = NcPoly(3, {("x",) * 3: 1})
print(f"over GF(3), x = (c1 + c2, c3):  x^3 = "
      f"{evaluate_poly(cube, AC4, {'x': x3})!r}")

# B(F,G,sigma): pairs over the extension with a twisted right action.
B = make_B(F2, gf_make(2, 2), 1)
print(f"\nB(GF(2), GF(4), sigma): dim {B.dim} over GF(2), "
      f"{B.num_elements} elements")
t0 = unit(B, "(t,0)")
c0 = unit(B, "(0,1)")
print(f"(t,0)*(0,1) = {t0 * c0!r}")
print(f"(0,1)*(t,0) = {c0 * t0!r}   (the twist applies sigma(t) = t+1)")

# Opposites reverse multiplication; commutative algebras are fixed.
print(f"\nopposite(C_3) == C_3: {opposite(C3) == C3}")
print(f"opposite(opposite(A(C_3))) == A(C_3): "
      f"{opposite(opposite(AC3)) == AC3}")
