"""Walkthrough: covers and decomposition classes at finite-field points.

A degree-n Kummer cover u^n = f(x) carries a cyclic group of order n; the
decomposition class of a point is the subgroup generated by the Frobenius,
which the engine reads off from a power residue.  An independent route
factors the fiber polynomial and reads the residue degree; the two always
agree, and every cyclic subgroup is realized by some point (density).
"""

from galstrat import CoverSpec, cyclic_group, make_field
from galstrat.covers import fiber_decomposition_order, kummer_fiber_coeffs
from galstrat.fields import power_residue

k = make_field(13)  # 13 = 1 mod 4, so the quartic cover is admissible
quartic = CoverSpec.kummer(4, "x", "~(x = 0)")
z4 = cyclic_group(4)

print("point  residue  decomposition subgroup  fiber factor degree")
for a in (1, 2, 3, 4, 5):
    residue = power_residue(a, 4, k)
    cls = quartic.decomposition_class({}, (a,), k)
    order = fiber_decomposition_order(kummer_fiber_coeffs(quartic, {}, (a,), k), k)
    print(f"{a:5d}  {residue:7d}  {sorted(cls)!s:22s}  {order}")
    assert len(cls) == order

# Density: every cyclic subgroup of Z/4 appears as some point's class.
seen = {quartic.decomposition_class({}, (a,), k) for a in range(1, 13)}
print("\nclasses realized over F_13:", sorted(sorted(s) for s in seen))
assert seen == set(z4.cyclic_subgroups())

# The trivial cover sees nothing: every class is the trivial subgroup.
from galstrat import parse_formula
trivial = CoverSpec.trivial(parse_formula("x = x", free_vars=("x",)))
assert all(trivial.decomposition_class({}, (a,), k) == frozenset({0})
           for a in range(13))
print("trivial cover: every decomposition class is the identity (checked)")
