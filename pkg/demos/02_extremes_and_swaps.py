"""Every corner of the thermal-process polytope as a product of two-level swaps.

With two heavy levels of equal weight and one light level, the d-stochastic
matrices form a polytope with ten corners. Each is a short product of
d-swaps, the strongest process that touches only two levels.
"""

from fractions import Fraction as F

from thermoforge import Dist, enumerate_extremes, extreme_to_swaps, validate_extreme_structure

d = Dist([F(2, 5), F(2, 5), F(1, 5)])
extremes = enumerate_extremes(d)
print(f"d = {d}: {len(extremes)} extreme points\n")

for M in extremes:
    report = validate_extreme_structure(M, d)
    word = extreme_to_swaps(M, d)
    product = " ".join(f"P{i}{j}" for i, j in word.pairs) or "identity"
    print(f"{report.kind:>11}   {product}")
    for row in M.rows:
        print("              " + "  ".join(f"{x!s:>3}" for x in row))
    assert word.matrix() == M
    print()

# The same holds on four levels, with longer products.
d4 = Dist([F(3, 10)] * 3 + [F(1, 10)])
lengths = [len(extreme_to_swaps(M, d4)) for M in enumerate_extremes(d4)]
print(f"four levels: {len(lengths)} extremes, longest product has {max(lengths)} swaps")
