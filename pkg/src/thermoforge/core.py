"""Exact distributions, column-stochastic matrices, d-swaps and T-transforms.

Conventions used throughout the package:

* Every number is a :class:`fractions.Fraction`. Nothing is ever rounded.
* Matrices are column-stochastic and act on column vectors, ``q = M @ p``;
  ``M[i][j]`` is the probability of moving from level ``j`` to level ``i``.
* Level labels in the public API are 1-based.
* The two labels of a d-swap or T-transform are *ranks* of the equilibrium:
  rank 1 is the level with the largest ``d`` entry, ties going to the
  smaller level first. For an already sorted ``d`` ranks and levels agree.
  With this convention a protocol built for the sorted equilibrium is valid,
  label for label, for every reordering of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    LambdaOutOfRange,
    NegativeEntry,
    NotNormalized,
    NotPositive,
    NotStochastic,
)

Scalar = Fraction
Rows = tuple[tuple[Fraction, ...], ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_scalar(x) -> Fraction:
    """Convert ``x`` to an exact rational.

    Accepts ints, Fractions, strings such as ``"3/7"``, ``"0.25"`` or
    ``"1e-3"``, and floats. A float is read through its shortest decimal
    representation, so ``0.1`` becomes ``1/10`` rather than the binary value.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as a rational")


def fmt(x: Fraction) -> str:
    """Render a rational as ``"num/den"`` (or ``"num"`` when integral)."""
    return str(x)


def to_decimal(x: Fraction, digits: int = 12) -> str:
    """Decimal string of ``x`` with ``digits`` significant digits."""
    if x == 0:
        return "0"
    sign = "-" if x < 0 else ""
    x = abs(x)
    # scale to an integer with `digits` significant figures
    exp = len(str(x.numerator)) - len(str(x.denominator))
    if Fraction(10) ** exp > x:
        exp -= 1
    shift = digits - 1 - exp
    scaled = x * Fraction(10) ** shift
    n = int(scaled)
    if scaled - n >= Fraction(1, 2):
        n += 1
    if len(str(n)) > digits:
        n //= 10
        shift -= 1
    s = str(n)
    if shift <= 0:
        return sign + s + "0" * (-shift)
    if len(s) <= shift:
        s = "0" * (shift - len(s) + 1) + s
    out = s[:-shift] + "." + s[-shift:]
    out = out.rstrip("0").rstrip(".")
    return sign + out


# ---------------------------------------------------------------- Dist


@dataclass(frozen=True)
class Dist:
    """An exact probability vector.

    Construct it from any iterable of numbers accepted by :func:`to_scalar`.
    Raises :class:`NegativeEntry` or :class:`NotNormalized` when the vector
    is not a distribution.
    """

    values: tuple[Fraction, ...]

    def __init__(self, values: Iterable):
        vals = tuple(to_scalar(v) for v in values)
        if not vals:
            raise DimensionMismatch("empty distribution")
        if any(v < 0 for v in vals):
            raise NegativeEntry(f"negative entry in {list(map(fmt, vals))}")
        if sum(vals) != 1:
            raise NotNormalized(f"entries sum to {sum(vals)}, not 1")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def strictly_positive(self) -> bool:
        return all(v > 0 for v in self.values)

    @property
    def support(self) -> tuple[int, ...]:
        """1-based levels carrying positive probability."""
        return tuple(k + 1 for k, v in enumerate(self.values) if v > 0)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def __iter__(self):
        return iter(self.values)

    def __repr__(self) -> str:
        return f"Dist({', '.join(map(fmt, self.values))})"

    @classmethod
    def uniform(cls, n: int) -> "Dist":
        return cls([Fraction(1, n)] * n)

    @classmethod
    def point(cls, n: int, level: int) -> "Dist":
        """Deterministic distribution on the 1-based ``level``."""
        return cls([ONE if k == level - 1 else ZERO for k in range(n)])


def validate_dist(v: Iterable) -> Dist:
    return Dist(v)


def require_positive(d: Dist) -> None:
    if not d.strictly_positive:
        raise NotPositive(f"equilibrium {d!r} has a zero entry")


def total_variation(p: Sequence[Fraction], q: Sequence[Fraction]) -> Fraction:
    if len(p) != len(q):
        raise DimensionMismatch("length mismatch")
    return sum((abs(a - b) for a, b in zip(p, q)), ZERO) / 2


# ---------------------------------------------------------------- Perm


@dataclass(frozen=True)
class Perm:
    """A permutation of ``{1..n}``; ``images[k-1]`` is the image of ``k``.

    Its matrix sends basis vector ``e_k`` to ``e_{images[k-1]}``, so applying
    it to a vector moves the entry at level ``k`` to position ``images[k-1]``.
    """

    images: tuple[int, ...]

    def __init__(self, images: Iterable[int]):
        imgs = tuple(int(i) for i in images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise IndexOutOfRange(f"{imgs} is not a permutation of 1..{len(imgs)}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(1, n + 1))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for k, img in enumerate(self.images, start=1):
            inv[img - 1] = k
        return Perm(inv)

    def compose(self, other: "Perm") -> "Perm":
        """``self`` after ``other``."""
        if other.n != self.n:
            raise DimensionMismatch("permutation sizes differ")
        return Perm(self(other(k)) for k in range(1, self.n + 1))

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.n:
            raise DimensionMismatch("vector length differs from permutation size")
        out = [None] * self.n
        for k, img in enumerate(self.images):
            out[img - 1] = v[k]
        return tuple(out)

    def matrix(self) -> "StochMatrix":
        rows = [[ZERO] * self.n for _ in range(self.n)]
        for k, img in enumerate(self.images):
            rows[img - 1][k] = ONE
        return StochMatrix(rows)


# ---------------------------------------------------------------- matrices


def as_rows(M) -> Rows:
    """Exact row tuples from a :class:`StochMatrix` or nested sequences.

    No stochasticity check is made here.
    """
    if isinstance(M, StochMatrix):
        return M.rows
    rows = tuple(tuple(to_scalar(x) for x in row) for row in M)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("matrix is not square")
    return rows


def identity_rows(n: int) -> Rows:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def matmul_rows(A: Rows, B: Rows) -> Rows:
    n = len(A)
    if len(B) != n:
        raise DimensionMismatch("matrix sizes differ")
    cols = list(zip(*B))
    return tuple(
        tuple(sum((a * b for a, b in zip(row, col) if a and b), ZERO) for col in cols)
        for row in A
    )


def matvec_rows(A: Rows, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    if len(A) != len(v):
        raise DimensionMismatch("matrix and vector sizes differ")
    return tuple(sum((a * x for a, x in zip(row, v) if a and x), ZERO) for row in A)


def stochastic_problem(rows: Rows) -> str | None:
    """Why ``rows`` is not column-stochastic, or None if it is."""
    n = len(rows)
    for i in range(n):
        for j in range(n):
            if not ZERO <= rows[i][j] <= ONE:
                return f"entry ({i + 1},{j + 1}) = {rows[i][j]} outside [0,1]"
    for j in range(n):
        s = sum(rows[i][j] for i in range(n))
        if s != 1:
            return f"column {j + 1} sums to {s}"
    return None


@dataclass(frozen=True)
class StochMatrix:
    """A column-stochastic square matrix with exact entries."""

    rows: Rows

    def __init__(self, rows):
        r = as_rows(rows)
        problem = stochastic_problem(r)
        if problem:
            raise NotStochastic(problem)
        object.__setattr__(self, "rows", r)

    @classmethod
    def identity(cls, n: int) -> "StochMatrix":
        return cls(identity_rows(n))

    @classmethod
    def _trusted(cls, rows: Rows) -> "StochMatrix":
        # for products and mixtures of matrices already known to be stochastic
        obj = object.__new__(cls)
        object.__setattr__(obj, "rows", rows)
        return obj

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, k):
        return self.rows[k]

    def __matmul__(self, other):
        if isinstance(other, StochMatrix):
            return compose(self, other)
        if isinstance(other, Dist):
            return apply(self, other)
        return NotImplemented

    def transpose_rows(self) -> Rows:
        return tuple(zip(*self.rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(fmt(x) for x in row) for row in self.rows)
        return f"StochMatrix[{body}]"


def apply(M: StochMatrix, p: Dist) -> Dist:
    """``M @ p`` as a new distribution."""
    return Dist(matvec_rows(M.rows, p.values))


def compose(A: StochMatrix, B: StochMatrix) -> StochMatrix:
    """The product ``A @ B`` (apply ``B`` first)."""
    return StochMatrix._trusted(matmul_rows(A.rows, B.rows))


def is_d_stochastic(M, d: Dist) -> bool:
    rows = as_rows(M)
    if len(rows) != d.n:
        raise DimensionMismatch(f"{len(rows)}x{len(rows)} matrix against {d.n} levels")
    if stochastic_problem(rows):
        return False
    return matvec_rows(rows, d.values) == d.values


# ---------------------------------------------------------------- sorting d


def rank_order(d: Dist) -> tuple[int, ...]:
    """0-based levels listed from the largest ``d`` entry down (stable)."""
    return tuple(sorted(range(d.n), key=lambda k: -d[k]))


def sorting_perm(d: Dist) -> Perm:
    """The permutation ``Q`` with ``Q.apply(d)`` sorted nonincreasingly."""
    images = [0] * d.n
    for r, level in enumerate(rank_order(d)):
        images[level] = r + 1
    return Perm(images)


def sorted_dist(d: Dist) -> Dist:
    return Dist(d[k] for k in rank_order(d))


def conjugate_to_sorted(d: Dist, M) -> tuple[Perm, StochMatrix]:
    """Return ``Q`` and ``Q M Q^T``; ``Q`` sorts ``d`` nonincreasingly."""
    if not isinstance(M, StochMatrix):
        M = StochMatrix(M)
    return sorting_perm(d), StochMatrix._trusted(conjugate_rows(d, M.rows))


def conjugate_rows(d: Dist, rows: Rows) -> Rows:
    """``Q M Q^T`` on raw rows, without any stochasticity check."""
    if len(rows) != d.n:
        raise DimensionMismatch("matrix and equilibrium sizes differ")
    order = rank_order(d)
    return tuple(tuple(rows[a][b] for b in order) for a in order)


def to_rank_frame(d: Dist, v: Sequence) -> tuple:
    """Reorder a vector from level order to rank order."""
    return tuple(v[k] for k in rank_order(d))


def from_rank_frame(d: Dist, v: Sequence) -> tuple:
    out = [None] * d.n
    for r, level in enumerate(rank_order(d)):
        out[level] = v[r]
    return tuple(out)


def two_level_ratio(d: Dist) -> Fraction | None:
    """``d1/d0`` when sorted ``d`` reads ``(d0, ..., d0, d1)``, else None.

    A uniform ``d`` qualifies with ratio 1.
    """
    s = sorted_dist(d).values
    if any(x != s[0] for x in s[:-1]):
        return None
    return s[-1] / s[0]


def is_quasi_uniform(d: Dist) -> bool:
    """At most two distinct entries."""
    return len(set(d.values)) <= 2


# ---------------------------------------------------------------- d-swaps


def _check_pair(n: int, i: int, j: int) -> None:
    if not (1 <= i <= j <= n):
        raise IndexOutOfRange(f"need 1 <= i <= j <= {n}, got ({i}, {j})")


def swap_gamma(d: Dist, i: int, j: int) -> Fraction:
    """Ratio of the rank-``j`` to the rank-``i`` equilibrium entry."""
    order = rank_order(d)
    return d[order[j - 1]] / d[order[i - 1]]


@lru_cache(maxsize=4096)
def _dswap_rows(d: Dist, i: int, j: int) -> Rows:
    n = d.n
    rows = [list(r) for r in identity_rows(n)]
    if i != j:
        order = rank_order(d)
        a, b = order[i - 1], order[j - 1]
        g = d[b] / d[a]
        rows[a][a] = ONE - g
        rows[a][b] = ONE
        rows[b][a] = g
        rows[b][b] = ZERO
    return tuple(tuple(r) for r in rows)


def dswap_matrix(d: Dist, i: int, j: int) -> StochMatrix:
    """The d-swap between ranks ``i <= j``; the identity when ``i == j``."""
    require_positive(d)
    _check_pair(d.n, i, j)
    return StochMatrix._trusted(_dswap_rows(d, i, j))


def ttransform_matrix(d: Dist, i: int, j: int, lam) -> StochMatrix:
    """``(1 - lam) I + lam P``, with ``P`` the d-swap between ranks i, j."""
    lam = to_scalar(lam)
    if not ZERO <= lam <= ONE:
        raise LambdaOutOfRange(f"lambda = {lam} not in [0,1]")
    P = dswap_matrix(d, i, j).rows
    n = d.n
    rows = tuple(
        tuple(lam * P[a][b] + ((ONE - lam) if a == b else ZERO) for b in range(n))
        for a in range(n)
    )
    return StochMatrix._trusted(rows)


def apply_pair(d: Dist, i: int, j: int, lam: Fraction, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Apply the T-transform on ranks ``i, j`` to ``v`` touching two entries."""
    if i == j or lam == 0:
        return tuple(v)
    order = rank_order(d)
    a, b = order[i - 1], order[j - 1]
    g = d[b] / d[a]
    out = list(v)
    va, vb = v[a], v[b]
    out[a] = (ONE - lam) * va + lam * ((ONE - g) * va + vb)
    out[b] = (ONE - lam) * vb + lam * g * va
    return tuple(out)


@dataclass(frozen=True)
class DSwap:
    """A d-swap on ranks ``i <= j`` of the equilibrium ``d``."""

    i: int
    j: int
    d: Dist

    def __post_init__(self):
        require_positive(self.d)
        _check_pair(self.d.n, self.i, self.j)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.i, self.j)

    def matrix(self) -> StochMatrix:
        return dswap_matrix(self.d, self.i, self.j)


@dataclass(frozen=True)
class TTransform:
    """``(1 - lam) I + lam P`` for the d-swap ``P`` on ranks ``i <= j``."""

    i: int
    j: int
    lam: Fraction
    d: Dist

    def __post_init__(self):
        require_positive(self.d)
        _check_pair(self.d.n, self.i, self.j)
        lam = to_scalar(self.lam)
        if not ZERO <= lam <= ONE:
            raise LambdaOutOfRange(f"lambda = {lam} not in [0,1]")
        object.__setattr__(self, "lam", lam)

    def matrix(self) -> StochMatrix:
        return ttransform_matrix(self.d, self.i, self.j, self.lam)

    def apply_to(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return apply_pair(self.d, self.i, self.j, self.lam, v)


@dataclass(frozen=True)
class SwapSeq:
    """A product of d-swaps, written left to right like the matrix product.

    The last swap in ``swaps`` acts first.
    """

    d: Dist
    swaps: tuple[DSwap, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "swaps", tuple(self.swaps))
        for s in self.swaps:
            if s.d != self.d:
                raise DimensionMismatch("all swaps must share one equilibrium")

    @classmethod
    def from_pairs(cls, d: Dist, pairs: Iterable[Sequence[int]]) -> "SwapSeq":
        return cls(d, tuple(DSwap(int(i), int(j), d) for i, j in pairs))

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(s.pair for s in self.swaps)

    def __len__(self) -> int:
        return len(self.swaps)

    def __add__(self, other: "SwapSeq") -> "SwapSeq":
        # concatenation is the matrix product self @ other
        if other.d != self.d:
            raise DimensionMismatch("equilibria differ")
        return SwapSeq(self.d, self.swaps + other.swaps)

    def matrix(self) -> StochMatrix:
        rows = identity_rows(self.d.n)
        for s in self.swaps:
            rows = matmul_rows(rows, _dswap_rows(self.d, s.i, s.j))
        return StochMatrix._trusted(rows)

    def apply_to(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        out = tuple(v)
        for s in reversed(self.swaps):
            out = apply_pair(self.d, s.i, s.j, ONE, out)
        return out

    def apply(self, p: Dist) -> Dist:
        return Dist(self.apply_to(p.values))


@dataclass(frozen=True)
class ConvexProtocol:
    """A convex combination of swap sequences.

    ``branches`` holds ``(weight, SwapSeq)`` pairs with positive weights
    summing to 1.
    """

    branches: tuple[tuple[Fraction, SwapSeq], ...]

    def __post_init__(self):
        branches = tuple((to_scalar(w), s) for w, s in self.branches)
        if not branches:
            raise NotNormalized("a protocol needs at least one branch")
        if any(w <= 0 for w, _ in branches):
            raise NegativeEntry("branch weights must be positive")
        if sum(w for w, _ in branches) != 1:
            raise NotNormalized("branch weights must sum to 1")
        d = branches[0][1].d
        if any(s.d != d for _, s in branches):
            raise DimensionMismatch("branches use different equilibria")
        object.__setattr__(self, "branches", branches)

    @classmethod
    def single(cls, seq: SwapSeq) -> "ConvexProtocol":
        return cls(((ONE, seq),))

    @property
    def d(self) -> Dist:
        return self.branches[0][1].d

    def matrix(self) -> StochMatrix:
        n = self.d.n
        acc = [[ZERO] * n for _ in range(n)]
        for w, seq in self.branches:
            rows = seq.matrix().rows
            for a in range(n):
                for b in range(n):
                    if rows[a][b]:
                        acc[a][b] += w * rows[a][b]
        return StochMatrix._trusted(tuple(tuple(r) for r in acc))

    def apply(self, p: Dist) -> Dist:
        out = [ZERO] * p.n
        for w, seq in self.branches:
            for k, x in enumerate(seq.apply_to(p.values)):
                out[k] += w * x
        return Dist(out)


def protocol_matrix(c: ConvexProtocol) -> StochMatrix:
    return c.matrix()
