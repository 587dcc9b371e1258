from itertools import permutations
from math import comb, factorial, prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tpush.combinatorics import (
    ParticleContent,
    RecolorMap,
    as_partition,
    compositions_up_to,
    conjugate,
    eta_minus,
    inc,
    k_vector,
    orbit,
    orbit_size,
    recolor,
    sort_desc,
    spectral_vector,
    ssyt_enumerate,
)

partitions = st.lists(st.integers(0, 3), min_size=1, max_size=5).map(lambda v: tuple(sorted(v, reverse=True)))


def test_orbit_examples():
    assert orbit((1, 0)) == [(1, 0), (0, 1)]
    assert len(orbit((2, 1, 0))) == 6
    assert orbit((1, 1, 0)) == [(1, 1, 0), (1, 0, 1), (0, 1, 1)]


def test_spectral_vector_examples():
    assert spectral_vector((0, 0, 0)) == ((0, -2), (0, -1), (0, 0))
    assert spectral_vector((1, 0, 2)) == ((1, -1), (0, -2), (2, 0))
    assert spectral_vector((1, 0)) == ((1, 0), (0, -1))


def test_conjugate_examples():
    assert conjugate((2, 1, 0)) == (2, 1)
    assert conjugate((1, 1, 0)) == (2,)
    assert conjugate((0, 0, 0)) == ()


def test_compositions_up_to_examples():
    assert set(compositions_up_to(2, 1)) == {(0, 0), (1, 0), (0, 1)}
    assert list(compositions_up_to(1, 3)) == [(0,), (1,), (2,), (3,)]
    assert len(list(compositions_up_to(3, 2))) == 10


def test_ssyt_examples():
    assert len(ssyt_enumerate((1,), 2)) == 2
    assert len(ssyt_enumerate((1, 1), 2)) == 1
    assert len(ssyt_enumerate((2,), 2)) == 3


def test_recolor_examples():
    phi = RecolorMap([0, 0, 1])
    assert recolor(phi, (2, 1, 0)) == (1, 0, 0)
    phi9 = RecolorMap([0, 0, 0, 1, 1, 2, 3, 3, 4])
    assert recolor(phi9, (3, 0, 6, 8, 7, 4, 5, 2)) == (1, 0, 3, 4, 3, 1, 2, 0)
    assert eta_minus((2, 0, 1)) == (1, 0, 0)


def test_recolor_map_validation():
    with pytest.raises(ValueError):
        RecolorMap([0, 2, 1])
    with pytest.raises(ValueError):
        RecolorMap([0, 1])(2)


def test_inc():
    phi = RecolorMap([0, 1, 1])
    assert inc((2, 1, 0), phi, (1, 0, 1)) == (1, 0, 2)
    with pytest.raises(ValueError):
        inc((2, 1, 0), phi, (1, 1, 1))


def test_particle_content():
    pc = ParticleContent((2, 1, 1, 0))
    assert pc.m == (1, 2, 1)
    assert pc.M == (4, 3, 1)
    assert pc.n == 4 and pc.L == 2


def test_as_partition_rejects():
    with pytest.raises(ValueError):
        as_partition((0, 1))


# ---- properties ----------------------------------------------------------------
@given(partitions)
def test_orbit_size_formula(lam):
    orb = orbit(lam)
    m = [lam.count(v) for v in set(lam)]
    assert len(orb) == factorial(len(lam)) // prod(factorial(c) for c in m) == orbit_size(lam)
    assert orb[0] == lam
    assert orb == sorted(set(permutations(lam)), reverse=True)


@given(partitions)
def test_conjugate_involution(lam):
    lam = tuple(v for v in lam if v)
    assert conjugate(conjugate(lam)) == lam


@given(st.integers(1, 4), st.integers(0, 4))
def test_compositions_count(n, d):
    cs = list(compositions_up_to(n, d))
    assert len(cs) == len(set(cs)) == comb(n + d, d)
    assert all(sum(c) <= d for c in cs)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_spectral_vector_injective(n):
    seen = {}
    for nu in compositions_up_to(n, 4):
        pt = spectral_vector(nu)
        assert pt not in seen, (nu, seen.get(pt))
        seen[pt] = nu


@given(st.lists(st.integers(0, 3), min_size=1, max_size=6))
def test_k_vector_matches_definition(mu):
    mu = tuple(mu)
    k = tuple(
        sum(1 for j in range(i) if mu[j] > mu[i]) + sum(1 for j in range(i + 1, len(mu)) if mu[j] >= mu[i])
        for i in range(len(mu))
    )
    assert k_vector(mu) == k


@given(partitions, st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_recolor_maps_orbit_onto_orbit(lam, steps):
    images = [0]
    for s in steps[: max(lam)]:
        images.append(images[-1] + s)
    phi = RecolorMap(images[: max(lam) + 1])
    kappa = sort_desc(recolor(phi, lam))
    assert {recolor(phi, mu) for mu in orbit(lam)} == set(orbit(kappa))


@given(st.lists(st.integers(0, 3), min_size=1, max_size=3).map(lambda v: tuple(sorted(v, reverse=True))),
       st.integers(1, 3))
def test_ssyt_valid_and_distinct(lam, n):
    lam = tuple(v for v in lam if v)
    if len(lam) > n:
        return
    ts = ssyt_enumerate(lam, n)
    assert len(set(ts)) == len(ts)
    assert all(T.is_valid(n) for T in ts)
