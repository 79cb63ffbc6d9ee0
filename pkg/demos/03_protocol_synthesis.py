"""Two ways to drive one state to another with two-level operations.

The strong route mixes deterministic swap sequences with classical
randomness. The weak route is a single sequence of partial swaps
(T-transforms) with no mixing at all. Both land on the target exactly.

Swap labels name levels by rank in d, heaviest first, so with the
unsorted d below "1" is the second listed level.
"""

import random
from fractions import Fraction as F

from thermoforge import Dist, reach_strong, reach_weak
from thermoforge.sampling import random_majorized_pair

d = Dist([F(1, 10), F(3, 10), F(3, 10), F(3, 10)])
p, q = random_majorized_pair(random.Random(7), d)
print("d =", d)
print("p =", p)
print("q =", q)

proto = reach_strong(p, q, d)
print(f"\nstrong route: mixture of {len(proto.branches)} swap sequences")
for w, seq in proto.branches:
    print(f"  with probability {w}: {' '.join(f'P{i}{j}' for i, j in seq.pairs) or 'do nothing'}")
print("  reaches q:", proto.apply(p) == q)

path = reach_weak(p, q, d)
print(f"\nweak route: {len(path)} partial swaps, first one first")
for t in path.steps:
    print(f"  T({t.i},{t.j}) with weight {t.lam}")
print("  reaches q:", path.apply(p) == q)
print("  progress trace:", [(phase, a, b) for phase, a, b in path.trace])
