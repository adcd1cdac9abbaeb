"""The free algebra layer: Lie words, Engel polynomials, degree sets.

Identities live in GF(p)<X>; the printable form round-trips through the
parser used by the command-line tool.
"""

from pivar import (
    commutator,
    degree_sets,
    engel_polynomial,
    full_linearization,
    lie_word,
    parse_poly,
    parse_representation,
)

p = 5

# Left-normed Lie words W_n expand to 2^(n-1) signed permutations.
w3 = lie_word(3, ["x", "y", "z"], p)
print(f"W3(x,y,z) over GF(5) = {w3!r}")
print(f"term counts: W2..W6 -> "
      f"{[len(lie_word(n, [f'v{i}' for i in range(n)], p)) for n in range(2, 7)]}")

# The Engel polynomial W_{n+1}(x,y,...,y) has a closed binomial form;
# when n is a power of the characteristic it collapses to [x, y^n].
rec, closed = engel_polynomial(2, "x", "y", p)
print(f"\nE2(x,y) over GF(5): {closed!r}")
print(f"recursive and closed forms agree: {rec == closed}")
_, e4 = engel_polynomial(4, "x", "y", 2)
print(f"E4 over GF(2) collapses: {e4!r} = [x, y^4]")

# Full linearization: replace a squared variable by two fresh ones and
# keep the multilinear part.
xsq = parse_poly("x^2", 2)
print(f"\nfull linearization of x^2: {full_linearization(xsq, ['x'])!r}")

# The S/D bookkeeping of a commutator-monomial representation; this is
# representation-dependent data, so the input is kept in flank-bracket
# form rather than normalized.
text = "x[x,y]x^2 + y^5[y,z]"
rep = parse_representation(text, 7)
sets = degree_sets(rep, ["x", "y"])
print(f"\nf = {text}")
print(f"S over (x,y) = {sorted(sets.s_set)}")
print(f"D over (x,y) = {sorted(sets.d_set)}")
print(f"coupling S = {{i+j : (i,j) in D}} holds: {sets.coupled()}")
