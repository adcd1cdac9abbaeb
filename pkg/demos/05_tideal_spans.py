"""Bounded-degree T-ideal spans: consequences, membership, certificates.

The span of u * g(words) * v at a fixed multidegree is an exact linear
object; membership answers come with a combination of rows that
re-expands to the query, byte for byte.
"""

from pivar import (
    NcPoly,
    commutator,
    consequence_basis,
    lie_word,
    parse_poly,
    substitute,
    tideal_member,
)

p = 2

# Degree 3 consequences of W2 contain W3 = [W2, x3].
w2 = lie_word(2, ["x1", "x2"], p)
basis = consequence_basis([w2], 3, "multilinear")
w3 = lie_word(3, ["x1", "x2", "x3"], p)
print(f"span dim of T(W2) at multilinear degree 3: {basis.dimension}")
print(f"contains W3: {basis.contains(w3)}")

# The headline instance: a product of two W3's is a consequence of W4.
w4 = lie_word(4, ["x1", "x2", "x3", "x4"], p)
f = lie_word(3, ["y1", "y2", "y3"], p) * lie_word(3, ["y4", "y5", "y6"], p)
result = tideal_member(f, [w4], mode="multilinear")
print(f"\nW3*W3 in T(W4) at degree 6: {result.member} "
      f"(span dim {result.span_dimension}, rows seen {result.rows_seen})")
print(f"certificate: {len(result.certificate)} rows; first three:")
for coeff, row in result.certificate[:3]:
    print(f"  {coeff} * {row.describe()}")
print(f"certificate re-expands exactly: "
      f"{result.expand_certificate() == f}")

# Graded mode captures partial linearizations: the mixed component of
# substituting x -> u + v into x^2 is a consequence row.
xsq = parse_poly("x^2", p)
mixed = parse_poly("u*v + v*u", p)
g = tideal_member(mixed, [xsq], mode="graded")
print(f"\nuv + vu in T(x^2) over GF(2): {g.member}")

# A consequence-calculus replay: substituting y2 -> y2*z into the
# bracket-of-brackets identity produces the two-term consequence plus
# visible instances of the generator itself.
gen = commutator(commutator(NcPoly.var("x1", p), NcPoly.var("y1", p)),
                 commutator(NcPoly.var("x2", p), NcPoly.var("y2", p)))
image = substitute(gen, {"y2": NcPoly.var("y2", p) * NcPoly.var("z", p)})
term1 = parse_poly("[[x1,y1],y2]*[x2,z]", p)
term2 = parse_poly("[x2,y2]*[[x1,y1],z]", p)
rest = image - term1 - term2
check = tideal_member(rest, [gen], mode="multilinear")
print(f"\nremainder of the substitution step lies in T(generator): "
      f"{check.member}")
