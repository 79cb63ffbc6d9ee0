import itertools
import random
from fractions import Fraction as F
from math import comb

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import seeds
from thermoforge import Dist, cone_extremes, convex_decompose, lorenz_curve, thermo_majorizes
from thermoforge.errors import DimensionMismatch
from thermoforge.lpdecomp import caratheodory_reduce, phase_one


def basis_oracle(target, vertices):
    """Feasibility by trying every linearly independent column subset."""
    A = sympy.Matrix([[v[i] for v in vertices] for i in range(len(target))] + [[1] * len(vertices)])
    b = sympy.Matrix(list(target) + [1])
    m = A.rows
    for size in range(1, min(m, len(vertices)) + 1):
        for cols in itertools.combinations(range(len(vertices)), size):
            sub = A[:, list(cols)]
            if sub.rank() < size:
                continue
            try:
                sol, params = sub.gauss_jordan_solve(b)
            except ValueError:
                continue
            if params.shape[0] == 0 and all(x >= 0 for x in sol):
                return True
    return False


def rational_points(rng, k, dim, den=6):
    return [tuple(F(rng.randint(-den, den), den) for _ in range(dim)) for _ in range(k)]


def check_witness(w, target, vertices):
    got = [sum(wk * vertices[k][i] for k, wk in w.weights) for i in range(len(target))]
    assert got == list(target)
    assert sum(wk for _, wk in w.weights) == 1
    assert all(wk > 0 for _, wk in w.weights)
    assert len(w) <= len(target) + 1


def test_target_is_vertex():
    verts = [(F(1), F(0)), (F(0), F(1)), (F(1, 2), F(1, 2))]
    w = convex_decompose(verts[1], verts)
    assert w.as_dict() == {1: 1}


def test_midpoint():
    verts = [(F(1), F(0), F(0)), (F(0), F(1), F(0))]
    w = convex_decompose((F(1, 2), F(1, 2), F(0)), verts)
    assert w.as_dict() == {0: F(1, 2), 1: F(1, 2)}


def test_no_vertices():
    assert convex_decompose((F(1),), []) is None


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        convex_decompose((F(1), F(0)), [(F(1),)])


def test_point_above_the_curve_is_outside():
    d = Dist([F(2, 5), F(2, 5), F(1, 5)])
    p = Dist([F(1, 2), F(1, 3), F(1, 6)])
    c = lorenz_curve(p, d)
    # raise the first breakpoint of the curve by moving mass onto that level
    x1, y1 = c.points[1]
    k = next(i for i in range(3) if d[i] == x1)
    bump = F(1, 100)
    q = list(p.values)
    q[k] = y1 + bump
    q[(k + 1) % 3] -= bump
    q = Dist(q)
    assert not thermo_majorizes(p, q, d)
    assert convex_decompose(q.values, [v.values for v in cone_extremes(p, d).points]) is None


@settings(max_examples=40)
@given(seeds, st.integers(1, 3), st.integers(1, 7))
def test_agrees_with_basis_enumeration(seed, dim, k):
    rng = random.Random(seed)
    verts = rational_points(rng, k, dim)
    if rng.random() < 0.5:
        w = [F(rng.randint(0, 4)) for _ in verts]
        if not sum(w):
            w[0] = F(1)
        target = tuple(sum(wi * v[i] for wi, v in zip(w, verts)) / sum(w) for i in range(dim))
    else:
        target = rational_points(rng, 1, dim)[0]
    w = convex_decompose(target, verts)
    assert (w is not None) == basis_oracle(target, verts)
    if w is not None:
        check_witness(w, target, verts)


@settings(max_examples=25)
@given(seeds, st.integers(2, 6), st.integers(5, 50))
def test_hull_mixtures_decompose(seed, dim, k):
    rng = random.Random(seed)
    verts = rational_points(rng, k, dim)
    w = [F(rng.randint(0, 3)) for _ in verts]
    w[rng.randrange(k)] += 1
    target = tuple(sum(wi * v[i] for wi, v in zip(w, verts)) / sum(w) for i in range(dim))
    wit = convex_decompose(target, verts)
    assert wit is not None
    check_witness(wit, target, verts)


@settings(max_examples=40)
@given(seeds, st.integers(1, 4), st.integers(1, 8))
def test_pivot_count_bounded(seed, m, nvar):
    rng = random.Random(seed)
    A = [[F(rng.randint(-3, 3)) for _ in range(nvar)] for _ in range(m)]
    b = [F(rng.randint(-3, 3)) for _ in range(m)]
    x, _, pivots = phase_one(A, b)
    assert pivots <= comb(nvar + m, m)
    if x is not None:
        assert all(v >= 0 for v in x)
        assert [sum(a * v for a, v in zip(row, x)) for row in A] == b


@given(seeds)
def test_caratheodory_keeps_point(seed):
    rng = random.Random(seed)
    verts = rational_points(rng, 8, 2)
    w = {k: F(rng.randint(1, 5)) for k in range(8)}
    s = sum(w.values())
    w = {k: v / s for k, v in w.items()}
    red = caratheodory_reduce(w, verts)
    assert len(red) <= 3
    assert sum(red.values()) == 1 and all(v > 0 for v in red.values())
    point = [sum(w[k] * verts[k][i] for k in w) for i in range(2)]
    assert [sum(red[k] * verts[k][i] for k in red) for i in range(2)] == point
