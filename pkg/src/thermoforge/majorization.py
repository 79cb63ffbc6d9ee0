"""Thermo-majorization curves and the extreme points of the thermal cone."""

from __future__ import annotations

import itertools
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .core import ZERO, Dist, Perm, require_positive
from .errors import DimensionMismatch, FactorialBlowup, OutOfDomain

DEFAULT_CONE_CAP = 8


@dataclass(frozen=True)
class LorenzCurve:
    """Breakpoints ``(x, y)`` of a concave piecewise-linear curve on [0, 1]."""

    points: tuple[tuple[Fraction, Fraction], ...]

    @property
    def xs(self) -> tuple[Fraction, ...]:
        return tuple(x for x, _ in self.points)

    def slopes(self) -> list[Fraction]:
        return [
            (y1 - y0) / (x1 - x0)
            for (x0, y0), (x1, y1) in zip(self.points, self.points[1:])
        ]

    def __call__(self, x) -> Fraction:
        return curve_at(self, x)


def _same_size(*dists: Dist) -> None:
    if len({p.n for p in dists}) != 1:
        raise DimensionMismatch("distributions have different lengths")


def d_permutation(p: Dist, d: Dist) -> Perm:
    """Permutation putting ``p/d`` in nonincreasing order.

    The returned ``Pi`` sends each level to its position; equal ratios keep
    the smaller level first.
    """
    require_positive(d)
    _same_size(p, d)
    order = sorted(range(p.n), key=lambda k: -(p[k] / d[k]))
    images = [0] * p.n
    for pos, level in enumerate(order):
        images[level] = pos + 1
    return Perm(images)


def lorenz_curve(p: Dist, d: Dist) -> LorenzCurve:
    pi_inv = d_permutation(p, d).inverse()
    x = y = ZERO
    pts = [(ZERO, ZERO)]
    for pos in range(1, p.n + 1):
        k = pi_inv(pos) - 1
        x += d[k]
        y += p[k]
        pts.append((x, y))
    return LorenzCurve(tuple(pts))


def curve_at(c: LorenzCurve, x) -> Fraction:
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise OutOfDomain(f"x = {x} outside [0, 1]")
    xs = c.xs
    k = bisect_right(xs, x) - 1
    if k >= len(xs) - 1:
        return c.points[-1][1]
    (x0, y0), (x1, y1) = c.points[k], c.points[k + 1]
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


def thermo_majorizes(p: Dist, q: Dist, d: Dist) -> bool:
    """Whether the curve of ``p`` lies nowhere below the curve of ``q``."""
    _same_size(p, q, d)
    cp, cq = lorenz_curve(p, d), lorenz_curve(q, d)
    xs = sorted(set(cp.xs) | set(cq.xs))
    return all(curve_at(cp, x) >= curve_at(cq, x) for x in xs)


def cone_point(p: Dist, pi: Perm, d: Dist, curve: LorenzCurve | None = None) -> Dist:
    """The extreme point of the cone of ``p`` attached to ordering ``pi``.

    Levels are laid out along the x-axis in the order given by ``pi``; each
    level then receives the rise of the curve of ``p`` over its own stretch.
    """
    curve = curve or lorenz_curve(p, d)
    inv = pi.inverse()
    ys = [ZERO]
    x = ZERO
    for pos in range(1, p.n + 1):
        x += d[inv(pos) - 1]
        ys.append(curve_at(curve, x))
    return Dist(ys[pi(k)] - ys[pi(k) - 1] for k in range(1, p.n + 1))


@dataclass(frozen=True)
class ConeExtremes:
    """Distinct extreme points of the cone of ``p``, each with one ordering."""

    entries: tuple[tuple[Perm, Dist], ...]

    @property
    def points(self) -> tuple[Dist, ...]:
        return tuple(pt for _, pt in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def cone_extremes(p: Dist, d: Dist, cap: int = DEFAULT_CONE_CAP) -> ConeExtremes:
    """Enumerate the cone's extreme points over every ordering of the levels.

    Orderings are visited in lexicographic order and the first ordering
    producing a point is the one kept. Raises :class:`FactorialBlowup`
    above ``cap`` levels.
    """
    require_positive(d)
    _same_size(p, d)
    if p.n > cap:
        raise FactorialBlowup(f"{p.n}! orderings exceed the cap of {cap} levels")
    curve = lorenz_curve(p, d)
    seen: dict[Dist, Perm] = {}
    for images in itertools.permutations(range(1, p.n + 1)):
        pi = Perm(images)
        pt = cone_point(p, pi, d, curve)
        seen.setdefault(pt, pi)
    return ConeExtremes(tuple((pi, pt) for pt, pi in seen.items()))


def in_cone(p: Dist, q: Dist, d: Dist, method: str = "curve") -> bool:
    """Whether ``q`` is reachable from ``p`` by a thermal operation.

    ``method="curve"`` compares Lorenz curves; ``method="lp"`` solves the
    convex-hull problem over :func:`cone_extremes` instead.
    """
    if method == "curve":
        return thermo_majorizes(p, q, d)
    if method == "lp":
        from .lpdecomp import convex_decompose

        pts = cone_extremes(p, d).points
        return convex_decompose(q.values, [pt.values for pt in pts]) is not None
    raise ValueError(f"unknown method {method!r}")
