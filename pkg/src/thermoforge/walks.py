"""Random walks on complete graphs and their mixing toward equilibrium."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import ZERO, Dist, StochMatrix, apply, total_variation
from .eto import LengthOneWitness, is_length_one, length_one_membership
from .errors import TooSmall


def simple_walk(n: int) -> StochMatrix:
    """Jump to one of the other ``n - 1`` vertices uniformly."""
    if n < 2:
        raise TooSmall("a walk needs at least two vertices")
    off = Fraction(1, n - 1)
    return StochMatrix([[ZERO if a == b else off for b in range(n)] for a in range(n)])


def lazy_walk(n: int) -> StochMatrix:
    """Stay put with probability 1/2, otherwise take a simple-walk step."""
    S = simple_walk(n).rows
    half = Fraction(1, 2)
    return StochMatrix(
        [[half * S[a][b] + (half if a == b else ZERO) for b in range(n)] for a in range(n)]
    )


@dataclass(frozen=True)
class WalkSpec:
    n: int
    kind: str = "simple"
    preferences: Dist | None = None
    custom: StochMatrix | None = None

    def matrix(self) -> StochMatrix:
        if self.kind == "simple":
            return simple_walk(self.n)
        if self.kind == "lazy":
            return lazy_walk(self.n)
        if self.kind == "custom" and self.custom is not None:
            return self.custom
        raise ValueError(f"unknown walk kind {self.kind!r}")

    @property
    def equilibrium(self) -> Dist:
        return self.preferences or Dist.uniform(self.n)


def classify_walk(M, d: Dist | None = None) -> LengthOneWitness:
    """Length-one decomposition of a walk; raises :class:`Rejected` if none."""
    rows = M.rows if isinstance(M, StochMatrix) else M
    return length_one_membership(M, d or Dist.uniform(len(rows)))


def iterate_walk(
    M: StochMatrix, p0: Dist, steps: int, d: Dist | None = None
) -> list[tuple[Dist, Fraction]]:
    """``[(p_t, TV(p_t, d)) for t = 0..steps]`` with ``p_{t+1} = M p_t``."""
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    d = d or Dist.uniform(p0.n)
    out = [(p0, total_variation(p0.values, d.values))]
    p = p0
    for _ in range(steps):
        p = apply(M, p)
        out.append((p, total_variation(p.values, d.values)))
    return out


def is_eto_walk(M, d: Dist | None = None) -> bool:
    rows = M.rows if isinstance(M, StochMatrix) else M
    return is_length_one(M, d or Dist.uniform(len(rows)))

