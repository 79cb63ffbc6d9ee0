"""Curves, majorization and the cone of reachable states.

A system with three energy levels sits in contact with a bath whose
equilibrium is d = (1/2, 1/3, 1/6). We ask which states a thermal process
can turn p into, and look at the corners of that set.
"""

from fractions import Fraction as F

from thermoforge import Dist, cone_extremes, in_cone, lorenz_curve, thermo_majorizes

d = Dist([F(1, 2), F(1, 3), F(1, 6)])
p = Dist([F(1, 10), F(3, 10), F(3, 5)])

print("equilibrium d =", d)
print("start       p =", p)

curve = lorenz_curve(p, d)
print("\nbreakpoints of the majorization curve of p:")
for x, y in curve.points:
    print(f"  x = {x!s:>5}   y = {y}")

# Every state below the curve is reachable. Equilibrium always is.
print("\np can relax to equilibrium:", thermo_majorizes(p, d, d))
print("p can become a pure ground state:", thermo_majorizes(p, Dist([1, 0, 0]), d))

cone = cone_extremes(p, d)
print(f"\nthe reachable set has {len(cone)} corners:")
for pi, pt in cone:
    print(f"  ordering {pi.images}: {pt}")

# Any mixture of corners is reachable, and the two membership tests agree.
mid = Dist((a + b) / 2 for a, b in zip(cone.points[0], cone.points[-1]))
print("\nmidpoint of two corners:", mid)
print("  by curve:", in_cone(p, mid, d, "curve"), "  by hull LP:", in_cone(p, mid, d, "lp"))
