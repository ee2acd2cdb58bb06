"""Milnor numbers of x^p + x^(p+1) + y^q across characteristics.

Over Q the Milnor number is (p-1)(q-1).  Modulo p the derivative of x^p
vanishes and mu jumps to p(q-1); modulo q the y-derivative vanishes and the
singularity is no longer isolated.  Every other prime is lucky, and no prime
ever gives a value below the one over Q: upper semicontinuity.
"""

from locsing import FamilySpec, modular_scan, milnor_number, make_ring, PrimeField

for p, q in [(2, 3), (3, 5)]:
    expr = f"x^{p} + x^{p + 1} + y^{q}"
    fam = FamilySpec.hypersurface("Z", "x,y", expr)
    rep = modular_scan(fam, [2, 3, 5, 7, 11, 13])
    print(expr)
    print("  over Q:", rep.generic)
    for prime, mu in rep.values.items():
        tag = "lucky" if prime in rep.lucky else "unlucky"
        print(f"  over F_{prime}: {'infinite' if mu == float('inf') else mu} ({tag})")
    print("  violations of mu_0 <= mu_p:", rep.violations or "none")

# The same numbers straight from the invariants module:
R7 = make_ring("x,y", PrimeField(7))
print("mu over F_7 of x^2 + x^3 + y^3:", milnor_number(R7("x^2 + x^3 + y^3")))
