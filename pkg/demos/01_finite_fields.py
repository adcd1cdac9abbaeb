"""Finite fields: canonical moduli, Frobenius maps, subfield lattices.

Everything downstream is exact arithmetic over GF(p) or a small
extension, so this walkthrough starts with the coefficient layer.
"""

from pivar import gf_make, frobenius_power, subfield_lattice

# GF(4) is built on the unique monic irreducible quadratic over GF(2);
# moduli are chosen canonically so encodings never vary between runs.
F4 = gf_make(2, 2)
print(f"GF(4) modulus coefficients (little-endian): {F4.modulus}")

omega = F4.element((0, 1))          # the class of t
print(f"omega * omega = {omega * omega!r}   (t^2 reduces to t + 1)")
print(f"omega^-1     = {omega.inverse()!r}")

# The Frobenius x -> x^(p^j) is the whole automorphism story for these
# fields; j = k is the identity.
print(f"\nFrobenius orbit of omega in GF(4): "
      f"{[repr(frobenius_power(omega, j)) for j in range(3)]}")

F2 = gf_make(2, 1)
for k in (4, 6):
    G = gf_make(2, k)
    lat = subfield_lattice(F2, G)
    print(f"\nsubfields of GF(2^{k}) containing GF(2): degrees "
          f"{lat.degrees}, maximal proper {lat.maximal_proper}")
    if lat.unique_maximal_proper is None:
        print("  no unique maximal proper subfield: no valid twist here")
    else:
        print(f"  unique maximal proper subfield: degree "
              f"{lat.unique_maximal_proper}")

# The twisted triangular algebras need an automorphism whose fixed field
# is that unique maximal subfield; GF(16)/GF(2) has exactly one choice.
from pivar import valid_sigmas

print(f"\nvalid twist exponents for (GF(2), GF(16)): "
      f"{valid_sigmas(F2, gf_make(2, 4))}")
print(f"valid twist exponents for (GF(2), GF(64)): "
      f"{valid_sigmas(F2, gf_make(2, 6))}   (two maximal subfields tie)")
