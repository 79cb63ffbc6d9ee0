"""Extreme points of the polytope of d-stochastic matrices.

Every extreme point is ``A D^-1`` where ``D = diag(d)`` and ``A`` is produced
by the greedy Jurkat-Ryser filling: pick an open cell, write the smaller of
its row and column residuals there, close whichever line is exhausted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .core import (
    ONE,
    ZERO,
    Dist,
    Rows,
    StochMatrix,
    as_rows,
    conjugate_rows,
    matvec_rows,
    require_positive,
    sorted_dist,
    stochastic_problem,
    two_level_ratio,
)
from .errors import CapExceeded, NotAnExtreme, UnsupportedEquilibrium

DEFAULT_EXTREME_CAP = 5


@dataclass(frozen=True)
class JRTrace:
    """One run of the filling procedure.

    ``positions[m]`` is the 1-based cell chosen at step ``m``;
    ``row_residuals[m]`` and ``col_residuals[m]`` are the residual vectors
    just before that step, with one extra final entry after the last step.
    """

    d: Dist
    positions: tuple[tuple[int, int], ...]
    row_residuals: tuple[tuple[Fraction, ...], ...]
    col_residuals: tuple[tuple[Fraction, ...], ...]
    result: Rows

    def matrix(self) -> StochMatrix:
        return StochMatrix(_scale_columns(self.result, self.d))


def _scale_columns(A: Rows, d: Dist) -> Rows:
    return tuple(tuple(a / d[j] for j, a in enumerate(row)) for row in A)


def jurkat_ryser(d: Dist, order: Iterable[Sequence[int]] = ()) -> JRTrace:
    """Run the filling procedure, trying cells in ``order`` (1-based).

    Cells already closed are skipped. If ``order`` runs out before the
    matrix is full, the remaining cells are taken in row-major order.
    """
    require_positive(d)
    n = d.n
    r, s = list(d), list(d)
    A: list[list[Fraction | None]] = [[None] * n for _ in range(n)]
    open_cells = n * n
    positions, rres, cres = [], [tuple(r)], [tuple(s)]
    fallback = ((i, j) for i in range(1, n + 1) for j in range(1, n + 1))
    for i, j in itertools.chain(order, fallback):
        if open_cells == 0:
            break
        a, b = i - 1, j - 1
        if A[a][b] is not None:
            continue
        m = min(r[a], s[b])
        A[a][b] = m
        open_cells -= 1
        if r[a] == m:
            for k in range(n):
                if A[a][k] is None:
                    A[a][k] = ZERO
                    open_cells -= 1
        if s[b] == m:
            for k in range(n):
                if A[k][b] is None:
                    A[k][b] = ZERO
                    open_cells -= 1
        r[a] -= m
        s[b] -= m
        positions.append((i, j))
        rres.append(tuple(r))
        cres.append(tuple(s))
    result = tuple(tuple(x for x in row) for row in A)
    return JRTrace(d, tuple(positions), tuple(rres), tuple(cres), result)


@dataclass(frozen=True)
class ExtremeSet:
    d: Dist
    matrices: tuple[StochMatrix, ...]

    def __len__(self) -> int:
        return len(self.matrices)

    def __iter__(self):
        return iter(self.matrices)

    def __contains__(self, M) -> bool:
        return as_rows(M) in {m.rows for m in self.matrices}


def enumerate_extremes(d: Dist, cap: int = DEFAULT_EXTREME_CAP) -> ExtremeSet:
    """All extreme points, found by exploring every choice of cell.

    Partial fillings reached by different routes are explored once.
    Raises :class:`CapExceeded` above ``cap`` levels.
    """
    require_positive(d)
    if d.n > cap:
        raise CapExceeded(f"{d.n} levels exceed the enumeration cap of {cap}")
    return ExtremeSet(d, tuple(StochMatrix._trusted(m) for m in _enumerate(d)))


@lru_cache(maxsize=64)
def _enumerate(d: Dist) -> tuple[Rows, ...]:
    n = d.n
    found: dict[Rows, None] = {}
    seen: set[tuple] = set()
    start = (None,) * (n * n)
    stack = [(start, tuple(d), tuple(d))]
    while stack:
        cells, r, s = stack.pop()
        if cells in seen:
            continue
        seen.add(cells)
        opened = [k for k, x in enumerate(cells) if x is None]
        if not opened:
            A = tuple(tuple(cells[a * n:(a + 1) * n]) for a in range(n))
            found.setdefault(_scale_columns(A, d), None)
            continue
        # push in reverse so the first open cell is explored first
        for k in reversed(opened):
            a, b = divmod(k, n)
            m = min(r[a], s[b])
            nxt = list(cells)
            nxt[k] = m
            if r[a] == m:
                for c in range(n):
                    if nxt[a * n + c] is None:
                        nxt[a * n + c] = ZERO
            if s[b] == m:
                for c in range(n):
                    if nxt[c * n + b] is None:
                        nxt[c * n + b] = ZERO
            nr, ns = list(r), list(s)
            nr[a] -= m
            ns[b] -= m
            t = tuple(nxt)
            if t not in seen:
                stack.append((t, tuple(nr), tuple(ns)))
    return tuple(found)


# ---------------------------------------------------------------- structure


@dataclass(frozen=True)
class ExtremeReport:
    """Structure of an extreme point, read in the rank frame of ``d``.

    ``kind`` is ``"permutation"`` or ``"chain"``. For a chain, ``chain``
    lists the cells ``(i_0, n), (i_1, j_1), ..., (i_t, j_t)`` with
    ``i_t = n``: the cell holding the single 1 of the last column followed
    by the cells holding ``gamma``.
    """

    kind: str
    gamma: Fraction
    chain: tuple[tuple[int, int], ...]
    sorted_rows: Rows


def _nonzeros(vals: Sequence[Fraction]) -> dict[int, Fraction]:
    return {k: v for k, v in enumerate(vals) if v}


def _is_permutation(rows: Rows) -> bool:
    return all(sorted(row) == [ZERO] * (len(row) - 1) + [ONE] for row in rows) and all(
        sum(col) == 1 for col in zip(*rows)
    )


def validate_extreme_structure(M, d: Dist) -> ExtremeReport:
    """Check the entry, line and chain structure of an extreme point.

    Requires sorted ``d`` of the form ``(d0, ..., d0, d1)``. Raises
    :class:`NotAnExtreme` naming the first clause that fails.
    """
    require_positive(d)
    g = two_level_ratio(d)
    if g is None:
        raise UnsupportedEquilibrium(f"sorted {d!r} is not of the form (d0,...,d0,d1)")
    rows = conjugate_rows(d, as_rows(M))
    n = len(rows)
    ds = sorted_dist(d).values
    if stochastic_problem(rows):
        raise NotAnExtreme("stochastic")
    if matvec_rows(rows, ds) != ds:
        raise NotAnExtreme("equilibrium")
    if g == 1:
        if not _is_permutation(rows):
            raise NotAnExtreme("permutation")
        return ExtremeReport("permutation", g, (), rows)
    alphabet = {ZERO, ONE, g, ONE - g}
    if any(x not in alphabet for row in rows for x in row):
        raise NotAnExtreme("alphabet")
    last_col = _nonzeros([row[n - 1] for row in rows])
    if len(last_col) != 1 or next(iter(last_col.values())) != 1:
        raise NotAnExtreme("last-column")
    if rows[n - 1][n - 1] == 1:
        if not _is_permutation(rows):
            raise NotAnExtreme("permutation")
        return ExtremeReport("permutation", g, (), rows)

    i = next(iter(last_col))
    chain = [(i, n - 1)]
    row = _nonzeros(rows[i])
    others = [c for c in row if c != n - 1]
    if len(others) != 1 or row[others[0]] != ONE - g:
        raise NotAnExtreme("row-with-one")
    used_cols = {n - 1}
    j = others[0]
    while True:
        if j in used_cols:
            raise NotAnExtreme("chain")
        used_cols.add(j)
        col = _nonzeros([rows[k][j] for k in range(n)])
        below = [k for k in col if k != i]
        if col.get(i) != ONE - g or len(below) != 1 or col[below[0]] != g:
            raise NotAnExtreme("one-minus-gamma-column")
        i = below[0]
        chain.append((i, j))
        row = _nonzeros(rows[i])
        if i == n - 1:
            if row != {j: g}:
                raise NotAnExtreme("last-row")
            break
        others = [c for c in row if c != j]
        if row.get(j) != g or len(others) != 1 or row[others[0]] != ONE - g:
            raise NotAnExtreme("gamma-row")
        j = others[0]
    chain_rows = {a for a, _ in chain}
    for a in range(n):
        if a not in chain_rows:
            nz = _nonzeros(rows[a])
            if len(nz) != 1 or next(iter(nz.values())) != 1 or next(iter(nz)) in used_cols:
                raise NotAnExtreme("residual-permutation")
    return ExtremeReport(
        "chain", g, tuple((a + 1, b + 1) for a, b in chain), rows
    )
