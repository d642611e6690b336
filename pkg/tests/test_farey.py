import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import any_slopes
from twobridge.farey import (IDENTITY, MobiusMap, gamma_inf_generators, gamma_r_generators, hat_gamma_generators,
                             is_null_homotopic, orbit_bfs, reduce_to_fundamental_domain, replay, tau_involution)
from twobridge.slopes import INFINITY, Slope, contains, farey_slopes, intervals

RS = ["2/5", "3/7", "3/8", "5/17"]


def test_gamma_inf_examples():
    neg, flip = gamma_inf_generators()
    assert neg(Slope(2, 5)) == Slope(-2, 5)
    assert flip(Slope(1, 3)) == Slope(5, 3)
    assert (flip @ neg)(Slope(3, 8)) == Slope(19, 8)


@pytest.mark.parametrize("r", RS)
def test_gamma_r_generators(r):
    r = Slope.of(r)
    for g in gamma_r_generators(r):
        assert g(r) == r
        assert (g @ g).is_identity
        assert g.det == -1


def test_mobius_rejects_bad_det():
    with pytest.raises(ValueError):
        MobiusMap(2, 0, 0, 1)


@pytest.mark.parametrize("r", RS)
def test_reduce_examples(r):
    r = Slope.of(r)
    assert reduce_to_fundamental_domain(r, Slope(r.num + 2 * r.den, r.den)).s0 == r
    assert reduce_to_fundamental_domain(r, INFINITY).s0 == INFINITY
    assert is_null_homotopic(r, r)
    assert is_null_homotopic(r, Slope(2 * r.den - r.num, r.den))


def test_not_null():
    assert not is_null_homotopic("3/8", "1/6")


def test_tau():
    tau = tau_involution()
    assert tau(INFINITY) == Slope(3, 8)
    assert tau(Slope(1, 6)) == Slope(3, 10)
    assert tau(Slope(3, 4)) == Slope(5, 12)
    assert tau.det == -1
    rng = random.Random(7)
    for _ in range(100):
        x = Slope(rng.randint(-50, 50), rng.randint(1, 40))
        assert tau(tau(x)) == x


def test_tau_versus_oracle():
    r = Slope(3, 8)
    tau = tau_involution()
    rng = random.Random(11)
    pool = farey_slopes(40, lo=(-2, 1), hi=(2, 1))
    for sp in rng.sample(pool, 200):
        s = tau(sp)
        a, b = reduce_to_fundamental_domain(r, s), reduce_to_fundamental_domain(r, sp)
        assert replay(r, a.word, a.s0) == s
        same_orbit = s.is_infinite or s.den > 40 or a.s0 in orbit_bfs(r, sp, 40)
        assert (a.s0 == b.s0) == same_orbit or s.den > 40


def test_orbits():
    r = Slope(3, 8)
    assert r in orbit_bfs(r, r, 20)
    assert not orbit_bfs(r, INFINITY, 20) & orbit_bfs(r, r, 20)
    assert Slope(3, 10) not in orbit_bfs(r, Slope(1, 6), 40)
    for x in orbit_bfs("2/5", INFINITY, 10):
        assert reduce_to_fundamental_domain("2/5", x).s0 == INFINITY


@settings(max_examples=300)
@given(st.sampled_from(RS), any_slopes(60, span=20))
def test_reduction_lands_and_replays(r, s):
    r = Slope.of(r)
    red = reduce_to_fundamental_domain(r, s)
    assert red.s0 in (INFINITY, r) or contains(intervals(r), red.s0)
    assert replay(r, red.word, red.s0) == s
    gens = hat_gamma_generators(r)
    assert all(0 <= i < len(gens) for i in red.word)


def test_identity_map():
    assert IDENTITY(Slope(2, 3)) == Slope(2, 3)
