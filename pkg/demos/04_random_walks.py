"""Random walks on complete graphs, read as thermal processes.

A walk is an ETO walk when one step is a mixture of single two-level
swaps. The simple walk qualifies only on two vertices; the lazy walk up to
four. We also watch the lazy walk mix toward the uniform distribution.
"""

from thermoforge import Dist, is_eto_walk, iterate_walk, lazy_walk, simple_walk
from thermoforge.core import to_decimal

print(" n   simple   lazy")
for n in range(2, 9):
    print(f"{n:2d}   {is_eto_walk(simple_walk(n))!s:>6}   {is_eto_walk(lazy_walk(n))!s:>5}")

n = 5
print(f"\nlazy walk on {n} vertices from a point mass:")
for t, (p, tv) in enumerate(iterate_walk(lazy_walk(n), Dist.point(n, 1), 8)):
    print(f"  step {t}: distance to uniform {to_decimal(tv, 6)}")
