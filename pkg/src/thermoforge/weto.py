"""State-level protocol synthesis.

Three routes from ``p`` to a target ``q`` it thermo-majorizes, all for
sorted ``d`` of the form ``(d0, ..., d0, d1)``:

* :func:`reach_weak` builds one deterministic path of T-transforms,
* :func:`reach_strong` mixes swap sequences that hit extreme points of the
  cone of ``p`` (:func:`emulate_cone_extreme`),
* :func:`search_canonical_path` is a bounded grid search over alternating
  two-level paths on three levels, used to probe matrices that no path of
  T-transforms should produce.

All of the work happens in the rank frame, where ``d`` is sorted. Labels are
ranks, so every emitted protocol is also valid for the unsorted ``d``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import (
    ONE,
    ZERO,
    ConvexProtocol,
    Dist,
    Perm,
    Rows,
    StochMatrix,
    SwapSeq,
    TTransform,
    apply_pair,
    as_rows,
    conjugate_rows,
    identity_rows,
    matmul_rows,
    rank_order,
    require_positive,
    sorted_dist,
    to_rank_frame,
    two_level_ratio,
)
from .errors import DimensionMismatch, NotMajorized, UnsupportedEquilibrium
from .lpdecomp import convex_decompose
from .majorization import (
    DEFAULT_CONE_CAP,
    cone_extremes,
    cone_point,
    curve_at,
    lorenz_curve,
    thermo_majorizes,
)


def _two_level(d: Dist) -> Fraction:
    require_positive(d)
    g = two_level_ratio(d)
    if g is None:
        raise UnsupportedEquilibrium(f"sorted {d!r} is not of the form (d0,...,d0,d1)")
    return g


@dataclass(frozen=True)
class TPath:
    """T-transforms applied one after another, first element first.

    ``trace`` records the progress measure around each synthesis step as
    ``(phase, before, after)``; phase ``"h0"`` counts how far the lightest
    level sits from its place in the target ordering, phase ``"h1"`` counts
    mismatched entries.
    """

    d: Dist
    steps: tuple[TTransform, ...] = ()
    trace: tuple[tuple[str, int, int], ...] = field(default=(), compare=False)

    def __len__(self) -> int:
        return len(self.steps)

    def apply(self, p: Dist) -> Dist:
        v = p.values
        for t in self.steps:
            v = t.apply_to(v)
        return Dist(v)

    def matrix(self) -> StochMatrix:
        rows = identity_rows(self.d.n)
        for t in self.steps:
            rows = matmul_rows(t.matrix().rows, rows)
        return StochMatrix._trusted(rows)


class _Walker:
    """Mutable state for building a path in the rank frame."""

    def __init__(self, ds: Dist, v: Sequence[Fraction]):
        self.ds = ds
        self.v = tuple(v)
        self.steps: list[tuple[int, int, Fraction]] = []

    def step(self, i: int, j: int, lam: Fraction) -> None:
        if not ZERO <= lam <= ONE:
            raise AssertionError(f"lambda {lam} escaped [0,1]")
        if lam == 0:
            return
        self.v = apply_pair(self.ds, i, j, lam, self.v)
        self.steps.append((i, j, lam))

    def sort_prefix(self, k: int) -> None:
        """Bubble the first ``k`` entries into nonincreasing order."""
        for end in range(k - 1, 0, -1):
            for r in range(end):
                if self.v[r] < self.v[r + 1]:
                    self.step(r + 1, r + 2, ONE)

    def permute_prefix_to(self, target: Sequence[Fraction], k: int) -> None:
        """Rearrange the first ``k`` entries to match ``target``'s."""
        self.sort_prefix(k)
        for i, j in reversed(_sorting_swaps(target[:k])):
            self.step(i, j, ONE)


def _sorting_swaps(vals: Sequence[Fraction]) -> list[tuple[int, int]]:
    keys = list(vals)
    out = []
    for end in range(len(keys) - 1, 0, -1):
        for r in range(end):
            if keys[r] < keys[r + 1]:
                keys[r], keys[r + 1] = keys[r + 1], keys[r]
                out.append((r + 1, r + 2))
    return out


# ---------------------------------------------------------------- weak route


def _light_interval(v: Sequence[Fraction], g: Fraction) -> tuple[int, int]:
    """Possible positions of the light level in the d-ordering of ``v``.

    Assumes the heavy entries are sorted. Ties give a range.
    """
    light = v[-1]
    heavy = v[:-1]
    lo = 1 + sum(1 for x in heavy if g * x > light)
    hi = 1 + sum(1 for x in heavy if g * x >= light)
    return lo, hi


def _gap(a: tuple[int, int], b: tuple[int, int]) -> int:
    if a[0] > b[1]:
        return a[0] - b[1]
    if a[1] < b[0]:
        return b[0] - a[1]
    return 0


def _path_in_rank_frame(ds: Dist, g: Fraction, p, q):
    """Steps taking ``p`` to ``q`` (both in the rank frame) plus a trace."""
    n = ds.n
    d0, d1 = ds[0], ds[-1]
    uniform = g == 1
    k = n if uniform else n - 1
    w = _Walker(ds, p)
    w.sort_prefix(k)
    qs = tuple(sorted(q[:k], reverse=True)) + tuple(q[k:])
    cq = lorenz_curve(Dist(qs), ds)
    trace = []

    if not uniform:
        half = ONE / (1 + g)
        while True:
            ip, iq = _light_interval(w.v, g), _light_interval(qs, g)
            h0 = _gap(ip, iq)
            if h0 == 0:
                break
            v = w.v
            pn = v[-1]
            if ip[0] > iq[1]:
                # light level sits too late: pull mass onto it from the heavy level just above
                i0 = ip[0] - 1
                pa = v[i0 - 1]
                y = sum(v[: i0 - 1], ZERO)
                need = curve_at(cq, (i0 - 1) * d0 + d1)
                lam = max(half, (need - y - pn) / (g * pa - pn))
            else:
                # light level sits too early: push its mass to the heavy level just below
                i0 = ip[1]
                pa = v[i0 - 1]
                y = sum(v[: i0 - 1], ZERO)
                need = curve_at(cq, i0 * d0)
                lam = max(half, (need - y - pa) / (pn - g * pa))
            w.step(i0, n, lam)
            w.sort_prefix(k)
            after = _gap(_light_interval(w.v, g), iq)
            trace.append(("h0", h0, after))
            if after >= h0 or not thermo_majorizes(Dist(w.v), Dist(qs), ds):
                raise AssertionError("light-level repositioning made no progress")

    # both now share one d-ordering; fix mismatches pairwise from the left
    if uniform:
        order = list(range(n))
    else:
        ip, iq = _light_interval(w.v, g), _light_interval(qs, g)
        m = max(ip[0], iq[0])
        order = list(range(m - 1)) + [n - 1] + list(range(m - 1, n - 1))
    while True:
        v = w.v
        diff = [r for r in range(n) if v[order[r]] != qs[order[r]]]
        if not diff:
            break
        h1 = len(diff)
        pair = next(
            (a, b)
            for a, b in zip(diff, diff[1:])
            if v[order[a]] > qs[order[a]] and v[order[b]] < qs[order[b]]
        )
        a, b = order[pair[0]], order[pair[1]]
        delta = min(v[a] - qs[a], qs[b] - v[b])
        if uniform or (a != n - 1 and b != n - 1):
            lam = delta / (v[a] - v[b])
            i, j = min(a, b) + 1, max(a, b) + 1
        elif b == n - 1:
            lam = delta / (g * v[a] - v[b])
            i, j = a + 1, n
        else:
            lam = delta / (v[a] - g * v[b])
            i, j = b + 1, n
        w.step(i, j, lam)
        after = sum(1 for r in range(n) if w.v[r] != qs[r])
        trace.append(("h1", h1, after))
        if after >= h1:
            raise AssertionError("pairwise transfer made no progress")

    for i, j in reversed(_sorting_swaps(q[:k])):
        w.step(i, j, ONE)
    if w.v != tuple(q):
        raise AssertionError("path does not reach the target")
    return w.steps, trace


def reach_weak(p: Dist, q: Dist, d: Dist) -> TPath:
    """A path of T-transforms taking ``p`` exactly to ``q``.

    Raises :class:`NotMajorized` when ``q`` is not reachable at all and
    :class:`UnsupportedEquilibrium` when sorted ``d`` has more than one
    level below the top value or more than two distinct values.
    """
    g = _two_level(d)
    if not (p.n == q.n == d.n):
        raise DimensionMismatch("distributions have different lengths")
    if not thermo_majorizes(p, q, d):
        raise NotMajorized("q is not thermo-majorized by p")
    ds = sorted_dist(d)
    steps, trace = _path_in_rank_frame(ds, g, to_rank_frame(d, p), to_rank_frame(d, q))
    path = TPath(d, tuple(TTransform(i, j, lam, d) for i, j, lam in steps), tuple(trace))
    if path.apply(p) != q:
        raise AssertionError("path does not reach the target")
    return path


def reach_weak_uniform(p: Dist, q: Dist) -> TPath:
    """Classical transfer path for ordinary (uniform-equilibrium) majorization."""
    return reach_weak(p, q, Dist.uniform(p.n))


# ---------------------------------------------------------------- strong route


def emulate_cone_extreme(p: Dist, pi: Perm, d: Dist) -> SwapSeq:
    """Swap sequence taking ``p`` to the cone extreme point of ordering ``pi``.

    At most one swap per level beyond the sorting swaps is used to move the
    light level into place; the remaining swaps only permute heavy levels.
    """
    g = _two_level(d)
    if pi.n != p.n or d.n != p.n:
        raise DimensionMismatch("sizes differ")
    ds = sorted_dist(d)
    n = p.n
    target = to_rank_frame(d, cone_point(p, pi, d).values)
    src = to_rank_frame(d, p.values)
    w = _Walker(ds, src)
    if target != src:
        if g == 1:
            w.permute_prefix_to(target, n)
        else:
            w.sort_prefix(n - 1)
            v = w.v
            m = 1 + sum(1 for x in v[:-1] if g * x >= v[-1])
            s = pi(rank_order(d)[-1] + 1)
            if m < s:
                for k in range(m, s):
                    w.step(k, n, ONE)
            elif s < m:
                for k in range(m - 1, s - 1, -1):
                    w.step(k, n, ONE)
            w.permute_prefix_to(target, n - 1)
    if w.v != target:
        raise AssertionError("swap sequence missed the cone extreme point")
    return SwapSeq.from_pairs(d, [(i, j) for i, j, _ in reversed(w.steps)])


def reach_strong(p: Dist, q: Dist, d: Dist, cap: int = DEFAULT_CONE_CAP) -> ConvexProtocol:
    """Convex mixture of swap sequences taking ``p`` exactly to ``q``."""
    _two_level(d)
    if not (p.n == q.n == d.n):
        raise DimensionMismatch("distributions have different lengths")
    if not thermo_majorizes(p, q, d):
        raise NotMajorized("q is not thermo-majorized by p")
    if q == p:
        return ConvexProtocol.single(SwapSeq(d))
    ce = cone_extremes(p, d, cap)
    witness = convex_decompose(q.values, [pt.values for pt in ce.points])
    if witness is None:
        raise AssertionError("cone decomposition failed for a majorized target")
    branches = tuple((wk, emulate_cone_extreme(p, ce.entries[k][0], d)) for k, wk in witness.weights)
    protocol = ConvexProtocol(branches)
    if protocol.apply(p) != q:
        raise AssertionError("protocol does not reach the target")
    return protocol


# ---------------------------------------------------------------- bounded search


@dataclass(frozen=True)
class SearchReport:
    """Outcome of :func:`search_canonical_path`.

    ``path`` is a list of ``(pair, lam)`` factors in matrix-product order
    when a reproduction was found. ``undetermined`` counts branches that
    met a singular factor with a consistent residual, which the search
    cannot invert; the search is only exhaustive when it is zero.
    """

    found: bool
    path: tuple[tuple[tuple[int, int], Fraction], ...]
    nodes: int
    undetermined: int


def _right_divide(X: Rows, ds: Dist, pair: tuple[int, int], lam: Fraction):
    """``X T^-1`` for the T-transform ``T``; None when no nonnegative quotient exists.

    Returns the string ``"singular"`` when ``T`` is singular but ``X`` is
    consistent with it.
    """
    i, j = pair[0] - 1, pair[1] - 1
    a, b, c, e = _block(ds, pair, lam)
    det = a * e - b * c
    n = len(X)
    if det == 0:
        # columns i and j of any X' T are proportional to (a, b) and (c, e) mixes
        for r in range(n):
            if X[r][i] * b != X[r][j] * a:
                return None
        return "singular"
    inv = (e / det, -b / det, -c / det, a / det)
    out = []
    for row in X:
        xi, xj = row[i], row[j]
        ni = xi * inv[0] + xj * inv[2]
        nj = xi * inv[1] + xj * inv[3]
        if ni < 0 or nj < 0:
            return None
        new = list(row)
        new[i], new[j] = ni, nj
        out.append(tuple(new))
    return tuple(out)


def _block(ds: Dist, pair: tuple[int, int], lam: Fraction):
    i, j = pair
    g = ds[j - 1] / ds[i - 1]
    # rows/cols (i, j) of (1 - lam) I + lam P: [[a, b], [c, e]]
    return (ONE - lam * g, lam, lam * g, ONE - lam)


def search_canonical_path(M, d: Dist, grid: int = 64, max_pairs: int = 6) -> SearchReport:
    """Look for ``M`` among alternating three-level paths on a rational grid.

    The candidate shape, in matrix-product order, is
    ``T23 (T12 T23)^max_pairs T12`` with every weight drawn from
    ``{0, 1/grid, ..., 1}``; a zero weight drops a factor, so shorter
    alternations are covered too. Factors are peeled off the right of
    ``M`` one at a time, and any quotient with a negative entry is pruned
    since a product of T-transforms is entrywise nonnegative.
    """
    _two_level(d)
    if d.n != 3:
        raise DimensionMismatch("the canonical shape is defined on three levels")
    ds = sorted_dist(d)
    X0 = conjugate_rows(d, as_rows(M))
    kinds = [(1, 2), (2, 3)] * (max_pairs + 1)  # from the right
    lams = [Fraction(k, grid) for k in range(grid + 1)]
    ident = identity_rows(3)
    seen: set = set()
    nodes = undetermined = 0
    stack = [(0, X0, ())]
    while stack:
        depth, X, peeled = stack.pop()
        nodes += 1
        if X == ident:
            path = tuple(reversed(peeled))
            return SearchReport(True, path, nodes, undetermined)
        if depth == len(kinds):
            continue
        pair = kinds[depth]
        for lam in lams:
            if lam == 0:
                nxt, step = X, peeled
            else:
                nxt = _right_divide(X, ds, pair, lam)
                if nxt is None:
                    continue
                if nxt == "singular":
                    undetermined += 1
                    continue
                step = peeled + ((pair, lam),)
            key = (depth + 1, nxt)
            if key not in seen:
                seen.add(key)
                stack.append((depth + 1, nxt, step))
    return SearchReport(False, (), nodes, undetermined)
