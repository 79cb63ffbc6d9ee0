"""Exact convex decomposition over a finite vertex list.

Feasibility of ``sum_k w_k v_k = target, sum_k w_k = 1, w >= 0`` is decided
by a phase-one simplex over rationals with Bland's anti-cycling rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import ONE, ZERO, to_scalar
from .errors import DimensionMismatch


@dataclass(frozen=True)
class ConvexWitness:
    """Positive weights on vertex indices that reproduce the target."""

    weights: tuple[tuple[int, Fraction], ...]
    pivots: int = 0

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.weights)

    def __len__(self) -> int:
        return len(self.weights)


def _pivot(tab: list[list[Fraction]], r: int, c: int) -> None:
    prow = tab[r]
    piv = prow[c]
    if piv != 1:
        tab[r] = prow = [x / piv for x in prow]
    nz = [k for k, x in enumerate(prow) if x]
    for i, row in enumerate(tab):
        if i == r:
            continue
        f = row[c]
        if f:
            for k in nz:
                row[k] -= f * prow[k]


def phase_one(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]):
    """Find ``x >= 0`` with ``A x = b``.

    Returns ``(x, basis, pivots)``; ``x`` is None when the system is
    infeasible. The solution is basic, so it has at most ``len(b)``
    nonzero entries.
    """
    m, nvar = len(A), len(A[0]) if A else 0
    tab = []
    for r in range(m):
        row = [to_scalar(x) for x in A[r]]
        rhs = to_scalar(b[r])
        if rhs < 0:
            row, rhs = [-x for x in row], -rhs
        art = [ZERO] * m
        art[r] = ONE
        tab.append(row + art + [rhs])
    # objective: minimise the sum of artificials, kept as the last row
    width = nvar + m + 1
    cost = [ZERO] * width
    for row in tab:
        for k in range(nvar):
            cost[k] -= row[k]
        cost[-1] -= row[-1]
    tab.append(cost)
    basis = [nvar + r for r in range(m)]
    pivots = 0
    while True:
        obj = tab[-1]
        entering = next((k for k in range(nvar + m) if obj[k] < 0), None)
        if entering is None:
            break
        best = None
        for r in range(m):
            a = tab[r][entering]
            if a > 0:
                ratio = tab[r][-1] / a
                key = (ratio, basis[r])
                if best is None or key < best[0]:
                    best = (key, r)
        if best is None:  # unbounded cannot happen in phase one
            raise AssertionError("phase-one objective unbounded")
        r = best[1]
        _pivot(tab, r, entering)
        basis[r] = entering
        pivots += 1
    if tab[-1][-1] != 0:
        return None, basis, pivots
    x = [ZERO] * nvar
    for r, var in enumerate(basis):
        if var < nvar:
            x[var] = tab[r][-1]
    return x, basis, pivots


def _null_vector(cols: list[list[Fraction]]) -> list[Fraction] | None:
    """A nonzero ``c`` with ``sum_k c_k cols[k] = 0``, if one exists."""
    k = len(cols)
    if k == 0:
        return None
    m = len(cols[0])
    M = [[cols[j][i] for j in range(k)] for i in range(m)]
    pivcols, r = [], 0
    for c in range(k):
        pr = next((i for i in range(r, m) if M[i][c]), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        M[r] = [x / M[r][c] for x in M[r]]
        for i in range(m):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * bb for a, bb in zip(M[i], M[r])]
        pivcols.append(c)
        r += 1
        if r == m:
            break
    free = next((c for c in range(k) if c not in pivcols), None)
    if free is None:
        return None
    vec = [ZERO] * k
    vec[free] = ONE
    for row, pc in enumerate(pivcols):
        vec[pc] = -M[row][free]
    return vec


def caratheodory_reduce(weights: dict[int, Fraction], vertices) -> dict[int, Fraction]:
    """Shrink a convex combination to affinely independent support.

    The represented point is unchanged; at most ``dim + 1`` weights survive.
    """
    w = {k: v for k, v in weights.items() if v}
    while True:
        keys = sorted(w)
        cols = [[to_scalar(x) for x in vertices[k]] + [ONE] for k in keys]
        c = _null_vector(cols)
        if c is None:
            return w
        if not any(x > 0 for x in c):
            c = [-x for x in c]
        t = min(w[k] / ck for k, ck in zip(keys, c) if ck > 0)
        for k, ck in zip(keys, c):
            w[k] -= t * ck
        w = {k: v for k, v in w.items() if v}


def convex_decompose(target: Sequence, vertices: Sequence[Sequence]) -> ConvexWitness | None:
    """Write ``target`` as a convex combination of ``vertices``.

    Returns a :class:`ConvexWitness` whose weights reproduce ``target``
    exactly, or None when ``target`` lies outside the convex hull.
    """
    target = [to_scalar(x) for x in target]
    dim = len(target)
    verts = [[to_scalar(x) for x in v] for v in vertices]
    if any(len(v) != dim for v in verts):
        raise DimensionMismatch("vertices and target differ in dimension")
    if not verts:
        return None
    A = [[v[i] for v in verts] for i in range(dim)] + [[ONE] * len(verts)]
    b = target + [ONE]
    x, _, pivots = phase_one(A, b)
    if x is None:
        return None
    w = caratheodory_reduce({k: xk for k, xk in enumerate(x) if xk}, verts)
    check = [sum((wk * verts[k][i] for k, wk in w.items()), ZERO) for i in range(dim)]
    if check != target or sum(w.values()) != 1 or any(v <= 0 for v in w.values()):
        raise AssertionError("convex witness failed re-multiplication")
    return ConvexWitness(tuple(sorted(w.items())), pivots)
