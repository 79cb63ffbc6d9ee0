"""Seeded random instances with exact rational entries.

Every function takes a :class:`random.Random` so that runs are replayable.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .core import ZERO, ConvexProtocol, Dist, StochMatrix, SwapSeq, apply
from .eto import LengthOneWitness
from .polytope import jurkat_ryser


def random_weights(rng: random.Random, k: int, lo: int = 1, hi: int = 12) -> list[Fraction]:
    """``k`` rationals summing to 1; zero entries are allowed when ``lo == 0``."""
    w = [rng.randint(lo, hi) for _ in range(k)]
    if sum(w) == 0:
        w[rng.randrange(k)] = 1
    s = sum(w)
    return [Fraction(x, s) for x in w]


def random_dist(rng: random.Random, n: int, zeros: bool = False) -> Dist:
    return Dist(random_weights(rng, n, 0 if zeros else 1))


def random_two_level(rng: random.Random, n: int, shuffle: bool = True, gamma=None) -> Dist:
    """Equilibrium whose sorted form is ``(d0, ..., d0, d1)`` with ``d1 <= d0``."""
    g = Fraction(gamma) if gamma is not None else Fraction(rng.randint(1, 12), 12)
    d0 = 1 / (n - 1 + g)
    vals = [d0] * (n - 1) + [g * d0]
    if shuffle:
        rng.shuffle(vals)
    return Dist(vals)


def random_extreme(rng: random.Random, d: Dist) -> StochMatrix:
    """One filling run with a shuffled cell order."""
    cells = [(i, j) for i in range(1, d.n + 1) for j in range(1, d.n + 1)]
    rng.shuffle(cells)
    return jurkat_ryser(d, cells).matrix()


def random_d_stochastic(rng: random.Random, d: Dist, k: int = 3) -> StochMatrix:
    """Random convex mix of ``k`` extreme points."""
    mats = [random_extreme(rng, d).rows for _ in range(k)]
    w = random_weights(rng, k)
    n = d.n
    return StochMatrix(
        [[sum((wk * m[a][b] for wk, m in zip(w, mats)), ZERO) for b in range(n)] for a in range(n)]
    )


def random_majorized_pair(rng: random.Random, d: Dist, zeros: bool = True) -> tuple[Dist, Dist]:
    p = random_dist(rng, d.n, zeros)
    return p, apply(random_d_stochastic(rng, d), p)


def random_length_one(rng: random.Random, d: Dist) -> StochMatrix:
    """Random mix of the identity and single d-swaps."""
    pairs = [(i, j) for i in range(1, d.n + 1) for j in range(i + 1, d.n + 1)]
    w = random_weights(rng, len(pairs) + 1, lo=0)
    return LengthOneWitness(w[0], tuple(zip(pairs, w[1:])), d).matrix()


def random_protocol(rng: random.Random, d: Dist, branches: int = 3, max_len: int = 4) -> ConvexProtocol:
    n = d.n
    out = []
    for w in random_weights(rng, branches):
        pairs = []
        for _ in range(rng.randint(0, max_len)):
            i = rng.randint(1, n)
            j = rng.randint(i, n)
            pairs.append((i, j))
        out.append((w, SwapSeq.from_pairs(d, pairs)))
    return ConvexProtocol(tuple(out))

