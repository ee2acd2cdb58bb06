"""Why local standard bases differ from Groebner bases.

In the power series ring 1 - x is a unit, so <x - x^2> = <x>.  A global
Groebner basis would see the ideal of two points instead.
"""

from locsing import make_ring, standard_basis, leading_module, vector_space_dimension, mora_normal_form

R = make_ring("x")
f = R("x - x^2")

for method in ("mora", "lazard"):
    sb = standard_basis([f], method=method)
    print(f"{method:>6}: leading ideal {leading_module(sb).components[0]}, "
          f"dim k[[x]]/I = {vector_space_dimension(sb)}, steps {sb.steps}")

# The weak normal form of x divides by x - x^2 after multiplying with the
# unit 1 - x; the certificate records that unit.
res = mora_normal_form(R("x"), [f], certificate=True)
print("normal form of x:", res.remainder, "with unit", res.certificate.unit)

# Orderings: ds compares degree first, ls is lexicographic.  Both are local
# and give the same dimension.
for order in ("ds", "ls"):
    S = make_ring("x,y", ordering=order)
    sb = standard_basis([S("x^2 + y^3"), S("x*y")])
    print(order, "dimension", vector_space_dimension(sb), "leading", leading_module(sb).components[0])
