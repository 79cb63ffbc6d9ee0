import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import dists, seeds, two_level_dists
from thermoforge import (
    ConvexProtocol,
    Dist,
    StochMatrix,
    SwapSeq,
    dswap_matrix,
    emulate_thermal_op,
    enumerate_extremes,
    extreme_to_swaps,
    get_fixture,
    is_length_one,
    lazy_walk,
    length_one_membership,
    protocol_matrix,
    support_monotone_check,
    ttransform_matrix,
)
from thermoforge.errors import (
    CapExceeded,
    NotAnExtreme,
    NotDStochastic,
    Rejected,
    UnsupportedEquilibrium,
)
from thermoforge.sampling import (
    random_d_stochastic,
    random_dist,
    random_length_one,
    random_protocol,
)

D3 = Dist([F(2, 5), F(2, 5), F(1, 5)])


def as_rows(m):
    return tuple(tuple(F(x) for x in r) for r in m)


class TestLengthOne:
    @given(dists(n=2, positive=True), st.integers(0, 12))
    def test_two_levels_always_accept(self, d, k):
        lam = F(k, 12)
        M = ttransform_matrix(d, 1, 2, lam)
        w = length_one_membership(M, d)
        # in the rank frame the off-diagonal weight is the swap weight
        assert w.lam == 1 - lam
        assert w.matrix() == M

    def test_lazy_four(self):
        w = length_one_membership(lazy_walk(4), Dist.uniform(4))
        assert w.lam == 0
        assert len(w.pair_weights) == 6
        assert all(x == F(1, 6) for x in w.weights().values())

    def test_lazy_five(self):
        with pytest.raises(Rejected) as exc:
            length_one_membership(lazy_walk(5), Dist.uniform(5))
        assert exc.value.reason == "LambdaOutOfRange"

    def test_detailed_balance_failure(self):
        M = as_rows(get_fixture("F3").data["extremes"]["A1"])
        with pytest.raises(Rejected) as exc:
            length_one_membership(M, D3)
        assert exc.value.reason == "DetailedBalanceFails"

    def test_non_stochastic(self):
        with pytest.raises(Rejected) as exc:
            length_one_membership([[F(1, 2), F(1)], [F(1, 3), F(0)]], Dist.uniform(2))
        assert exc.value.reason == "NotStochastic"

    @given(dists(positive=True, max_n=5), st.data())
    def test_single_swap_is_a_generator(self, d, data):
        i = data.draw(st.integers(1, d.n - 1))
        j = data.draw(st.integers(i + 1, d.n))
        w = length_one_membership(dswap_matrix(d, i, j), d)
        assert w.lam == 0
        assert w.weights() == {(i, j): 1}

    @given(dists(positive=True, max_n=5), seeds)
    def test_random_mixes_round_trip(self, d, seed):
        M = random_length_one(random.Random(seed), d)
        w = length_one_membership(M, d)
        assert w.matrix() == M
        assert protocol_matrix(w.protocol()) == M

    @given(dists(positive=True, min_n=3, max_n=4), seeds)
    def test_decision_matches_witness(self, d, seed):
        M = random_d_stochastic(random.Random(seed), d, k=2)
        if is_length_one(M, d):
            assert length_one_membership(M, d).matrix() == M


def swap_length_bound(n):
    return n + n * math.log(n)


class TestExtremeToSwaps:
    def test_identity(self):
        assert extreme_to_swaps(StochMatrix.identity(3), D3).pairs == ()

    def test_listed_products(self):
        fx = get_fixture("F3")
        for label, m in fx.data["extremes"].items():
            M = as_rows(m)
            seq = extreme_to_swaps(M, D3)
            assert seq.matrix().rows == M, label
            listed = SwapSeq.from_pairs(D3, fx.data["products"][label])
            assert listed.matrix().rows == M, label

    def test_not_extreme(self):
        M = ttransform_matrix(D3, 1, 2, F(1, 3))
        with pytest.raises(NotAnExtreme):
            extreme_to_swaps(M, D3)

    @pytest.mark.parametrize(
        "d",
        [
            Dist([F(2, 5), F(2, 5), F(1, 5)]),
            Dist([F(1, 5), F(2, 5), F(2, 5)]),
            Dist([F(3, 10)] * 3 + [F(1, 10)]),
            Dist([F(1, 10), F(3, 10), F(3, 10), F(3, 10)]),
            Dist.uniform(4),
            Dist.uniform(5),
            Dist([F(2, 9)] * 4 + [F(1, 9)]),
        ],
        ids=str,
    )
    def test_every_extreme(self, d):
        longest = 0
        for M in enumerate_extremes(d):
            seq = extreme_to_swaps(M, d)
            assert seq.matrix() == M
            longest = max(longest, len(seq))
        assert longest <= swap_length_bound(d.n)


class TestEmulation:
    def test_single_ttransform(self):
        M = ttransform_matrix(D3, 1, 2, F(1, 3))
        proto = emulate_thermal_op(M, D3)
        assert protocol_matrix(proto) == M

    def test_counterexample_matrix(self):
        fx = get_fixture("F4")
        proto = emulate_thermal_op(fx.M, fx.d)
        assert protocol_matrix(proto).rows == fx.M

    @pytest.mark.parametrize(
        "d", [Dist([F(1, 2), F(1, 3), F(1, 6)]), Dist([F(1, 2), F(1, 4), F(1, 4)])], ids=str
    )
    def test_unsupported_equilibria(self, d):
        # the second has two values, but the repeated one is the light level
        with pytest.raises(UnsupportedEquilibrium):
            emulate_thermal_op(StochMatrix.identity(3), d)

    def test_not_d_stochastic(self):
        with pytest.raises(NotDStochastic):
            emulate_thermal_op([[0, 0, 1], [0, 1, 0], [1, 0, 0]], D3)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            emulate_thermal_op(StochMatrix.identity(4), Dist.uniform(4), cap=3)

    @settings(max_examples=40)
    @given(two_level_dists(min_n=2, max_n=4), seeds)
    def test_random_matrices(self, d, seed):
        M = random_d_stochastic(random.Random(seed), d)
        assert protocol_matrix(emulate_thermal_op(M, d)) == M


class TestSupport:
    def test_trivial_protocol(self):
        p = Dist([1, 0, 0])
        assert support_monotone_check(ConvexProtocol.single(SwapSeq(D3)), p)

    @given(dists(positive=True, max_n=5), seeds)
    def test_random_protocols(self, d, seed):
        rng = random.Random(seed)
        proto = random_protocol(rng, d)
        assert support_monotone_check(proto, random_dist(rng, d.n, zeros=True))

    def test_split_mass_cannot_concentrate(self):
        fx = get_fixture("F1")
        # the target has smaller support, so no protocol can reach it
        assert len(fx.q.support) < len(fx.p.support)
        rng = random.Random(0)
        for _ in range(50):
            assert random_protocol(rng, fx.d).apply(fx.p) != fx.q
