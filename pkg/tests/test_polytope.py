import itertools
import random
from fractions import Fraction as F
from math import factorial

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import dists, two_level_dists
from thermoforge import (
    Dist,
    StochMatrix,
    dswap_matrix,
    enumerate_extremes,
    get_fixture,
    is_d_stochastic,
    jurkat_ryser,
    validate_extreme_structure,
)
from thermoforge.errors import CapExceeded, NotAnExtreme, UnsupportedEquilibrium
from thermoforge.sampling import random_d_stochastic, random_extreme

D3 = Dist([F(2, 5), F(2, 5), F(1, 5)])


def as_rows(m):
    return tuple(tuple(F(x) for x in r) for r in m)


def vertex_oracle(d):
    """Basic feasible solutions of {M >= 0, column sums 1, M d = d}."""
    n = d.n
    cells = [(a, b) for a in range(n) for b in range(n)]
    eqs = [[1 if c[1] == b else 0 for c in cells] for b in range(n)]
    eqs += [[d[c[1]] if c[0] == a else 0 for c in cells] for a in range(n)]
    A = sympy.Matrix(eqs)
    rhs = sympy.Matrix([1] * n + list(d))
    rank = A.rank()
    found = set()
    for size in range(1, rank + 1):
        for support in itertools.combinations(range(len(cells)), size):
            sub = A[:, list(support)]
            if sub.rank() < size:
                continue
            try:
                sol, params = sub.gauss_jordan_solve(rhs)
            except ValueError:
                continue
            if params.shape[0] or any(x <= 0 for x in sol):
                continue
            M = [[F(0)] * n for _ in range(n)]
            for k, x in zip(support, sol):
                a, b = cells[k]
                M[a][b] = F(int(x.p), int(x.q))
            found.add(tuple(map(tuple, M)))
    return found


def permutation_matrices(n):
    out = set()
    for imgs in itertools.permutations(range(n)):
        out.add(tuple(tuple(F(int(imgs[b] == a)) for b in range(n)) for a in range(n)))
    return out


class TestFilling:
    def test_single_level(self):
        assert jurkat_ryser(Dist([1])).result == ((F(1),),)

    def test_two_uniform_levels(self):
        t = jurkat_ryser(Dist.uniform(2), [(1, 1)])
        assert t.result == ((F(1, 2), 0), (0, F(1, 2)))
        assert t.matrix() == StochMatrix.identity(2)

    def test_hand_order_reaches_listed_extreme(self):
        want = as_rows(get_fixture("F3").data["extremes"]["A2"])
        t = jurkat_ryser(D3, [(1, 3), (3, 1), (1, 1), (2, 2)])
        assert t.matrix().rows == want

    @given(dists(positive=True, max_n=5), st.integers(0, 2**32 - 1))
    def test_margins(self, d, seed):
        t = jurkat_ryser(d, random_cells(d.n, seed))
        assert all(sum(r) == x for r, x in zip(t.result, d))
        assert all(sum(c) == x for c, x in zip(zip(*t.result), d))
        assert t.row_residuals[-1] == (0,) * d.n
        assert is_d_stochastic(t.matrix(), d)


def random_cells(n, seed):
    cells = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    random.Random(seed).shuffle(cells)
    return cells


class TestEnumeration:
    def test_listed_extremes(self):
        fx = get_fixture("F3")
        want = {as_rows(m) for m in fx.data["extremes"].values()}
        assert {m.rows for m in enumerate_extremes(D3)} == want
        assert len(want) == 10

    def test_two_levels(self):
        d = Dist([F(2, 3), F(1, 3)])
        got = {m.rows for m in enumerate_extremes(d)}
        assert got == {StochMatrix.identity(2).rows, dswap_matrix(d, 1, 2).rows}

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_uniform_gives_permutations(self, n):
        got = {m.rows for m in enumerate_extremes(Dist.uniform(n))}
        assert got == permutation_matrices(n)
        assert len(got) == factorial(n)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            enumerate_extremes(Dist.uniform(6))
        with pytest.raises(CapExceeded):
            enumerate_extremes(D3, cap=2)

    @settings(max_examples=15)
    @given(dists(positive=True, min_n=2, max_n=3))
    def test_matches_vertex_oracle(self, d):
        assert {m.rows for m in enumerate_extremes(d)} == vertex_oracle(d)

    @settings(max_examples=20)
    @given(dists(positive=True, max_n=4))
    def test_members_are_d_stochastic(self, d):
        assert all(is_d_stochastic(m, d) for m in enumerate_extremes(d))

    @settings(max_examples=20)
    @given(dists(positive=True, max_n=4))
    def test_transpose_closure(self, d):
        ext = enumerate_extremes(d)
        n = d.n
        for M in ext:
            A = [[M.rows[a][b] * d[b] for b in range(n)] for a in range(n)]
            back = [[A[b][a] / d[b] for b in range(n)] for a in range(n)]
            assert back in ext

    @settings(max_examples=20)
    @given(dists(positive=True, max_n=4), st.integers(0, 2**32 - 1))
    def test_random_fillings_are_members(self, d, seed):
        assert random_extreme(random.Random(seed), d) in enumerate_extremes(d)


class TestStructure:
    def test_identity(self):
        r = validate_extreme_structure(StochMatrix.identity(3), D3)
        assert r.kind == "permutation"
        assert r.sorted_rows[-1][-1] == 1

    def test_four_level_chain(self):
        g = F(1, 3)
        d = Dist([1 / (3 + g)] * 3 + [g / (3 + g)])
        M = [[0, 0, 1 - g, 1], [0, 1 - g, g, 0], [1 - g, g, 0, 0], [g, 0, 0, 0]]
        r = validate_extreme_structure(M, d)
        assert r.kind == "chain"
        assert r.chain == ((1, 4), (2, 3), (3, 2), (4, 1))

    def test_three_level_chain(self):
        A7 = as_rows(get_fixture("F3").data["extremes"]["A7"])
        r = validate_extreme_structure(A7, D3)
        assert r.kind == "chain"
        assert len(r.chain) == 3
        assert r.gamma == F(1, 2)

    def test_mixture_is_not_extreme(self):
        M = random_d_stochastic(random.Random(3), D3, k=3)
        if M not in enumerate_extremes(D3):
            with pytest.raises(NotAnExtreme):
                validate_extreme_structure(M, D3)

    def test_needs_two_level_equilibrium(self):
        with pytest.raises(UnsupportedEquilibrium):
            validate_extreme_structure(StochMatrix.identity(3), Dist([F(1, 2), F(1, 3), F(1, 6)]))

    @settings(max_examples=20)
    @given(two_level_dists(min_n=2, max_n=4))
    def test_every_extreme_passes(self, d):
        for M in enumerate_extremes(d):
            assert validate_extreme_structure(M, d).kind in ("permutation", "chain")

    @settings(max_examples=30)
    @given(two_level_dists(min_n=3, max_n=4), st.integers(0, 2**32 - 1))
    def test_non_extremes_fail(self, d, seed):
        M = random_d_stochastic(random.Random(seed), d, k=2)
        if M in enumerate_extremes(d):
            return
        with pytest.raises(NotAnExtreme):
            validate_extreme_structure(M, d)
