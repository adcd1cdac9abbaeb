"""End-to-end certification: is a variety Lie nilpotent?

The pipeline: recognize a non-primeness witness (a member that is a
product of disjoint Lie words), then test the almost-Lie-nilpotent
catalog.  Every catalog algebra rejected with a concrete witness means
the variety is Lie nilpotent; any catalog algebra satisfying the system
means it is not.
"""

from pivar import (
    Bounds,
    FieldMode,
    IdentitySystem,
    certify,
    parse_poly,
    render_certificate,
    render_machine,
)

p = 2

# The worked example: [x^p, y] = 0 plus a product of Lie words.
sigma = IdentitySystem((
    parse_poly("[x^2,y]", p),
    parse_poly("W3(a,b,c)*W3(d,e,f)", p),
))

print("=== finite base field GF(2) ===")
cert = certify(FieldMode.finite(2), sigma)
print(render_certificate(cert))

print("=== infinite base field of characteristic 2 ===")
cert = certify(FieldMode.infinite(2), sigma)
print(render_certificate(cert))

# Negative control: the defining system of the variety A(C) generates.
control = IdentitySystem((
    parse_poly("[y,z]x", p),
    parse_poly("y^2x", p),
    parse_poly("[x1,x2]*[x3,x4]", p),
))
print("=== negative control ===")
cert = certify(FieldMode.finite(2), control)
print(render_certificate(cert))
print("machine line:")
print(render_machine(cert))

# Without any product-of-commutators member the result must stay open:
# the classification says nothing about prime varieties.
open_case = IdentitySystem((parse_poly("[x^2,y]", p),))
cert = certify(FieldMode.finite(2), open_case)
print(f"\nno witness, no assertion: {cert.verdict}")
cert = certify(FieldMode.finite(2), open_case, Bounds(),
               assume_nonprime=True)
print(f"with assume_nonprime: {cert.verdict}")
