"""Invariants of an isolated singularity and its determinacy bound.

For f = x^5 + y^5 + x^2 y^2 the Tjurina number is one less than the Milnor
number.  Every term of degree above 2 tau - ord + 2 can be changed without
changing the singularity, so mu and tau stay put.
"""

import random

from locsing import full_report, make_ring, milnor_number, tjurina_number

R = make_ring("x,y")
f = R("x^5 + y^5 + x^2*y^2")
rep = full_report([f])
for key, value in rep.as_dict().items():
    print(f"{key:>18}: {value}")

b = rep.determinacy_bound
rng = random.Random(1)
g = f
for _ in range(5):
    d = rng.randint(b + 1, b + 3)
    a = rng.randint(0, d)
    g = g + R.monomial((a, d - a), rng.randint(-9, 9) or 1)
print(f"\nadded five terms of degree > {b}")
print("mu, tau before:", milnor_number(f), tjurina_number(f))
print("mu, tau after: ", milnor_number(g), tjurina_number(g))

# An isolated complete intersection in the plane: T_I is a module of rank 2.
icis = full_report([R("x^2 + y^3"), R("x*y")])
print("\n(x^2 + y^3, x y): dim T_I =", icis.dim_T_I, "CI:", icis.is_CI, "isolated:", icis.isolated)
