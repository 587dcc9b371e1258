from itertools import permutations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tpush.algebra import Frac, MPoly, t_integer
from tpush.combinatorics import orbit
from tpush.polynomials import f_star_vanishing
from tpush.queues import (
    a_coeff,
    b_coeff,
    ball_weight,
    c_coeff,
    c_coeff_unsigned,
    f_star_mlq_q1,
    signed_two_line_queues,
    two_line_queues,
    unsigned_g_queue,
)


def _tint(m, n):
    return t_integer(m, n)


def test_a_coeff_n8_cell():
    n = 8
    T = MPoly.t(n)
    expected = Frac(T, _tint(6, n)) * Frac(T, _tint(4, n)) * Frac(MPoly.one(n), _tint(2, n))
    assert a_coeff((3, 0, 6, 8, 7, 4, 5, 2), (5, 3, 6, 8, 0, 4, 7, 2)) == expected


def test_a_coeff_small():
    assert a_coeff((2, 1, 0), (2, 1, 0)) == Frac(MPoly.one(3), MPoly.one(3))
    assert a_coeff((1, 0), (0, 1)) == Frac(MPoly.one(2), MPoly.one(2))


def test_a_coeff_rejects_unequal_content():
    with pytest.raises(ValueError):
        a_coeff((1, 0), (1, 1))


def test_unsigned_queue_n8_cell():
    n = 8
    rho, nu = (5, 3, 6, 8, 0, 4, 7, 2), (0, 3, 6, 5, 8, 4, 7, 2)
    one = MPoly.one(n)
    tm7 = MPoly.monomial(n, t=-7)
    balls = tm7 * tm7
    for k in (2, 3, 6, 7, 8):
        balls = balls * (MPoly.x(n, k) - tm7)
    pairs = (one - MPoly.t(n)) ** 2 * MPoly.t(n)
    assert unsigned_g_queue(rho, nu).weight() == balls * pairs
    assert c_coeff(rho, nu) == balls * pairs


def test_unsigned_queue_existence_examples():
    assert unsigned_g_queue((2, 7, 1, 5, 0, 6), (0, 7, 2, 1, 5, 6)) is not None
    assert unsigned_g_queue((2, 7, 1, 5, 0, 6), (0, 7, 2, 1, 6, 5)) is None
    assert c_coeff_unsigned((2, 7, 1, 5, 0, 6), (0, 7, 2, 1, 6, 5)).is_zero()


def test_c_all_zero_rows():
    assert c_coeff((0, 0, 0), (0, 0, 0)) == MPoly.one(3)


def test_f_star_mlq_small():
    n = 2
    tinv = MPoly.monomial(n, t=-1)
    assert f_star_mlq_q1((0, 0)) == Frac(MPoly.one(n), MPoly.one(n))
    assert f_star_mlq_q1((1, 0)) == Frac(MPoly.x(n, 1) - tinv, MPoly.one(n))
    assert f_star_mlq_q1((0, 1)) == Frac(MPoly.x(n, 2) - MPoly.one(n), MPoly.one(n))


@pytest.mark.parametrize("mu", sorted({p for n in (2, 3, 4) for k in range(n + 1)
                                        for p in permutations((1,) * k + (0,) * (n - k))}))
def test_f_star_mlq_one_row_product(mu):
    # F*_mu = prod_{i in S} (x_i - t^(#S^c cap [i-1]) / t^(n-1)) for mu in {0,1}^n
    n = len(mu)
    expected = MPoly.one(n)
    for i, v in enumerate(mu):
        if v == 1:
            gaps = sum(1 for j in range(i) if mu[j] == 0)
            expected = expected * (MPoly.x(n, i + 1) - MPoly.monomial(n, t=gaps - (n - 1)))
    assert f_star_mlq_q1(mu) == Frac(expected, MPoly.one(n))


def test_queue_reading_statistics_shape():
    qs = list(two_line_queues((3, 0, 6, 8, 7, 4, 5, 2), (5, 3, 6, 8, 0, 4, 7, 2)))
    assert len(qs) == 1
    js = qs[0].to_json()
    assert js["top"] == [3, 0, 6, 8, 7, 4, 5, 2]
    assert len(js["pairs"]) == 7


@pytest.mark.parametrize("lam", [(2, 0), (2, 1, 0), (3, 2, 0), (4, 2, 0), (3, 1, 0), (4, 3, 2, 0)])
def test_a_rows_are_stochastic_per_vacancy_site(lam):
    n = len(lam)
    one = Frac(MPoly.one(n), MPoly.one(n))
    states = orbit(lam)
    for eta in states:
        for j in range(n):
            total = Frac(MPoly.zero(n), MPoly.one(n))
            for rho in states:
                if rho[j] == 0:
                    total = total + a_coeff(eta, rho)
            assert total == one, (eta, j)


def _distinct_contents(max_n):
    for n in range(2, max_n + 1):
        for top in range(n - 1, n + 2):
            for parts in _choose(range(1, top + 1), n - 1):
                yield tuple(sorted(parts, reverse=True)) + (0,)


def _choose(pool, k):
    pool = list(pool)
    if k == 0:
        yield ()
        return
    for i, v in enumerate(pool):
        for rest in _choose(pool[i + 1:], k - 1):
            yield (v,) + rest


def _signed_sum(kappa, nu):
    n = len(nu)
    total = MPoly.zero(n)
    idx = [i for i in range(n) if kappa[i]]
    for signs in product((1, -1), repeat=len(idx)):
        alpha = list(kappa)
        for s, i in zip(signs, idx):
            alpha[i] *= s
        for Q in signed_two_line_queues(tuple(alpha), nu):
            total = total + Q.weight()
    return total


@pytest.mark.parametrize("lam", [lam for lam in _distinct_contents(4)])
def test_sign_forgetting_exhaustive(lam):
    states = orbit(lam)
    for kappa in states:
        for nu in states:
            assert c_coeff_unsigned(kappa, nu) == _signed_sum(kappa, nu), (kappa, nu)


@given(st.sampled_from([(5, 3, 2, 1, 0), (6, 4, 3, 1, 0), (5, 4, 3, 2, 1, 0), (6, 5, 3, 2, 0, 1)]), st.data())
def test_sign_forgetting_sampled(lam, data):
    lam = tuple(sorted(lam, reverse=True))
    kappa = data.draw(st.permutations(lam)).copy()
    nu = data.draw(st.permutations(lam)).copy()
    assert c_coeff_unsigned(tuple(kappa), tuple(nu)) == _signed_sum(tuple(kappa), tuple(nu))


@pytest.mark.parametrize("lam", [(2, 1, 0), (3, 2, 0), (3, 1, 1, 0), (2, 2, 1, 0)])
def test_fast_skipped_path_matches_general(lam):
    states = orbit(lam)
    for kappa in states:
        for nu in states:
            idx = [i for i in range(len(lam)) if kappa[i]]
            for signs in product((1, -1), repeat=len(idx)):
                alpha = list(kappa)
                for s, i in zip(signs, idx):
                    alpha[i] *= s
                alpha = tuple(alpha)
                assert b_coeff(alpha, nu, fast=True) == b_coeff(alpha, nu, fast=False)


def test_ball_weight():
    n = 3
    assert ball_weight((2, -1, 0)) == MPoly.x(n, 1) * MPoly.monomial(n, t=-2, coeff=-1)


@pytest.mark.parametrize("mu", [(1, 0), (0, 2), (2, 1, 0), (0, 1, 2), (1, 1, 0), (2, 0, 2), (1, 0, 0, 1)])
def test_mlq_matches_vanishing_small(mu):
    assert f_star_mlq_q1(mu) == f_star_vanishing(mu, q="1")
