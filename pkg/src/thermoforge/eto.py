"""Elementary thermal operations at the matrix level.

* :func:`length_one_membership` decides whether a matrix is a convex
  combination of single d-swaps (plus the identity) and returns the weights.
* :func:`extreme_to_swaps` writes an extreme point of the polytope as one
  product of d-swaps.
* :func:`emulate_thermal_op` writes any d-stochastic matrix as a convex
  combination of such products.

The last two need sorted ``d`` of the form ``(d0, ..., d0, d1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import (
    ONE,
    ZERO,
    ConvexProtocol,
    Dist,
    Rows,
    StochMatrix,
    SwapSeq,
    as_rows,
    conjugate_rows,
    identity_rows,
    is_d_stochastic,
    matmul_rows,
    require_positive,
    sorted_dist,
    stochastic_problem,
    two_level_ratio,
    _dswap_rows,
)
from .errors import (
    CapExceeded,
    DimensionMismatch,
    InternalInfeasible,
    NotDStochastic,
    Rejected,
    UnsupportedEquilibrium,
)
from .lpdecomp import convex_decompose
from .polytope import DEFAULT_EXTREME_CAP, enumerate_extremes, validate_extreme_structure


@dataclass(frozen=True)
class LengthOneWitness:
    """``M = lam * I + sum w_ij * P(i, j)`` over rank pairs ``i < j``."""

    lam: Fraction
    pair_weights: tuple[tuple[tuple[int, int], Fraction], ...]
    d: Dist

    def weights(self) -> dict[tuple[int, int], Fraction]:
        return dict(self.pair_weights)

    def matrix(self) -> StochMatrix:
        n = self.d.n
        acc = [[self.lam if a == b else ZERO for b in range(n)] for a in range(n)]
        for (i, j), w in self.pair_weights:
            P = _dswap_rows(self.d, i, j)
            for a in range(n):
                for b in range(n):
                    if P[a][b]:
                        acc[a][b] += w * P[a][b]
        return StochMatrix(acc)

    def protocol(self) -> ConvexProtocol:
        branches = [(w, SwapSeq.from_pairs(self.d, [pair])) for pair, w in self.pair_weights]
        if self.lam:
            branches.insert(0, (self.lam, SwapSeq(self.d)))
        return ConvexProtocol(tuple(branches))


def length_one_lambdas(rows: Rows, ds) -> list[Fraction]:
    """Candidate identity weight computed from each level, in the rank frame."""
    n = len(rows)
    lams = []
    for i in range(n):
        lam = rows[i][i]
        lam -= sum((ONE - ds[j] / ds[i]) * rows[i][j] for j in range(i + 1, n))
        lam -= sum(
            rows[k][j]
            for j in range(n)
            for k in range(j)
            if k != i and j != i
        )
        lams.append(lam)
    return lams


def length_one_membership(M, d: Dist) -> LengthOneWitness:
    """Decompose ``M`` into the identity plus single d-swaps.

    Raises :class:`Rejected` with ``reason`` set to ``NotStochastic``,
    ``DetailedBalanceFails``, ``LambdaInconsistent`` or ``LambdaOutOfRange``.
    """
    require_positive(d)
    rows = as_rows(M)
    if len(rows) != d.n:
        raise DimensionMismatch(f"{len(rows)}x{len(rows)} matrix against {d.n} levels")
    if stochastic_problem(rows):
        raise Rejected("NotStochastic", stochastic_problem(rows))
    rs = conjugate_rows(d, rows)
    ds = sorted_dist(d).values
    n = d.n
    for i in range(n):
        for j in range(i + 1, n):
            if rs[i][j] * ds[j] != rs[j][i] * ds[i]:
                raise Rejected(
                    "DetailedBalanceFails", f"detailed balance fails for ranks ({i + 1},{j + 1})"
                )
    lams = length_one_lambdas(rs, ds)
    if len(set(lams)) != 1:
        raise Rejected("LambdaInconsistent", f"identity weights differ: {sorted(set(lams))}")
    lam = lams[0]
    if not ZERO <= lam <= ONE:
        raise Rejected("LambdaOutOfRange", f"identity weight {lam} outside [0,1]")
    pairs = tuple(
        ((i + 1, j + 1), rs[i][j]) for i in range(n) for j in range(i + 1, n) if rs[i][j]
    )
    witness = LengthOneWitness(lam, pairs, d)
    if witness.matrix().rows != rows:
        raise AssertionError("length-one witness does not reproduce the matrix")
    return witness


def is_length_one(M, d: Dist) -> bool:
    try:
        length_one_membership(M, d)
    except Rejected:
        return False
    return True


# ---------------------------------------------------------------- extremes


def bubble_transpositions(rows: Rows) -> list[tuple[int, int]]:
    """Adjacent transpositions whose product is the permutation matrix ``rows``.

    Rows are bubble-sorted into the identity; the swaps, in the order they
    are performed, multiply left to right to give back the matrix.
    """
    keys = [row.index(ONE) for row in rows]
    out = []
    n = len(keys)
    for end in range(n - 1, 0, -1):
        for r in range(end):
            if keys[r] > keys[r + 1]:
                keys[r], keys[r + 1] = keys[r + 1], keys[r]
                out.append((r + 1, r + 2))
    return out


@lru_cache(maxsize=8192)
def _sorted_extreme_pairs(rows: Rows, ds: Dist) -> tuple[tuple[int, int], ...]:
    report = validate_extreme_structure(rows, ds)
    if report.kind == "permutation":
        return tuple(bubble_transpositions(rows))
    n = ds.n
    cols = [j for _, j in report.chain[1:]]
    # the last-column swaps: the one for the first chain column acts first
    n0_pairs = [(j, n) for j in reversed(cols)]
    N0 = identity_rows(n)
    for i, j in n0_pairs:
        N0 = matmul_rows(N0, _dswap_rows(ds, i, j))
    # N0 already has the rows of M, just in the wrong places
    target_of = {}
    free = list(range(n))
    for r in range(n):
        match = next(k for k in free if rows[k] == N0[r])
        free.remove(match)
        target_of[r] = match
    R = tuple(
        tuple(ONE if target_of[c] == r else ZERO for c in range(n)) for r in range(n)
    )
    return tuple(bubble_transpositions(R) + n0_pairs)


def extreme_to_swaps(M, d: Dist) -> SwapSeq:
    """Write an extreme point as a single product of d-swaps.

    Raises :class:`NotAnExtreme` or :class:`UnsupportedEquilibrium`.
    """
    require_positive(d)
    ds = sorted_dist(d)
    rows = as_rows(M)
    pairs = _sorted_extreme_pairs(conjugate_rows(d, rows), ds)
    seq = SwapSeq.from_pairs(d, pairs)
    if seq.matrix().rows != rows:
        raise AssertionError("swap product does not reproduce the extreme point")
    return seq


def emulate_thermal_op(M, d: Dist, cap: int = DEFAULT_EXTREME_CAP) -> ConvexProtocol:
    """Convex combination of d-swap products equal to ``M``.

    ``M`` must be d-stochastic and sorted ``d`` must read ``(d0, ..., d0, d1)``.
    """
    require_positive(d)
    if two_level_ratio(d) is None:
        raise UnsupportedEquilibrium(f"sorted {d!r} is not of the form (d0,...,d0,d1)")
    rows = as_rows(M)
    if not is_d_stochastic(rows, d):
        raise NotDStochastic("matrix is not d-stochastic")
    if d.n > cap:
        raise CapExceeded(f"{d.n} levels exceed the enumeration cap of {cap}")
    ds = sorted_dist(d)
    rs = conjugate_rows(d, rows)
    extremes = enumerate_extremes(ds, cap).matrices
    flat = [x for row in rs for x in row]
    witness = convex_decompose(flat, [[x for row in e.rows for x in row] for e in extremes])
    if witness is None:
        raise InternalInfeasible("a d-stochastic matrix failed to decompose")
    branches = tuple(
        (w, SwapSeq.from_pairs(d, _sorted_extreme_pairs(extremes[k].rows, ds)))
        for k, w in witness.weights
    )
    protocol = ConvexProtocol(branches)
    if protocol.matrix().rows != rows:
        raise AssertionError("protocol does not reproduce the matrix")
    return protocol


def support_size(v) -> int:
    return sum(1 for x in v if x)


def support_monotone_check(protocol: ConvexProtocol, p: Dist) -> bool:
    """Whether the protocol does not shrink the support of ``p``."""
    return support_size(p) <= support_size(protocol.apply(p))
