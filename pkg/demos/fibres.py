"""Completed fibres of two one-parameter families.

Z[[x]]/<x - 5>: over F_p the element x - 5 is a unit unless p = 5, where it
becomes x.  Q[t][[x]]/<t - x>: at t = 0 the quotient is Q, at t = c != 0 it
is zero, and at the generic point t is a unit of Q(t).  Fibre dimension can
only go up under specialization.
"""

from pathlib import Path

from locsing import GENERIC, Prime, Value, completed_fibre_dimension, load_family, semicontinuity_check

families = Path(__file__).resolve().parent.parent / "families"

ex_z = load_family(families / "ex_Z.fam")
print("Z-family x - 5:")
for pt in [Prime(2), Prime(3), Prime(5), Prime(7), GENERIC]:
    print(f"  {pt}: d_hat = {completed_fibre_dimension(ex_z, pt)}")

ex_kt = load_family(families / "ex_Kt.fam")
print("Q[t]-family t - x:")
for pt in [Value(0), Value(1), GENERIC]:
    print(f"  {pt}: d_hat = {completed_fibre_dimension(ex_kt, pt)}")

# A pencil of plane curves: x^2 + t y^2 + y^3 is A_1 for t != 0 and a cusp at t = 0.
pencil = load_family(families / "pencil_Kt.fam")
rep = semicontinuity_check(pencil, Value(0), [GENERIC, Value(1), Value(-2)])
print("pencil, special t=0 with mu", rep.special_value)
for c in rep.comparisons:
    print(f"  {c.point}: {c.value} <= {rep.special_value}  {c.verdict}")
