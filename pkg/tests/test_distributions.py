from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import jtheta, mp, mpf

from codecensus.distributions import (
    SAMPLER_TAIL, _theta_tail_iv, asymptotic_p, convergence_report, exact_p, pointwise_gap, sample,
    shifted_distribution, theta_distribution, theta_pmf, tv_distance, twice,
)
from codecensus.constants import iv_workdps


@pytest.fixture(autouse=True)
def high_precision():
    with mp.workdps(40):
        yield


def test_twice():
    assert twice(3) == 6 and twice(Fraction(-1, 2)) == -1 and twice("3/2") == 3
    with pytest.raises(ValueError):
        twice(Fraction(1, 3))


def test_exact_p():
    assert exact_p(2, 4, 2) == Fraction(35, 67)
    assert exact_p(5, 4, 2) == 0
    assert sum(exact_p(k, 7, 3) for k in range(8)) == 1


@given(st.sampled_from(["even", "odd"]), st.integers(0, 30), st.sampled_from([2, 3, 4, 5]))
def test_shifted_is_symmetric_probability(parity, m, q):
    d = shifted_distribution(parity, m, q)
    assert sum(d.masses.values()) == 1
    assert all(d.masses[t] == d.masses[-t] for t in d.masses)
    assert all(t % 2 == d.half_integer for t in d.masses)
    assert d.pmf(Fraction(1, 2) if parity == "even" else 0) == 0


def test_shifted_values():
    d = shifted_distribution("even", 1, 2)
    assert d.items().__next__() == (-1, Fraction(1, 5))
    assert d.pmf(0) == Fraction(3, 5)
    o = shifted_distribution("odd", 1, 2)
    assert o.support() == [Fraction(-3, 2), Fraction(-1, 2), Fraction(1, 2), Fraction(3, 2)]
    assert o.pmf(Fraction(1, 2)) == Fraction(7, 16)


def test_theta_pmf_against_jtheta():
    th3 = theta_distribution("theta3", Fraction(1, 2))
    th2 = theta_distribution("theta2", "1/2")
    p0 = theta_pmf(th3, 0)
    with mp.workdps(80):
        ref = 1 / jtheta(3, 0, mpf("0.5"))
        ref2 = mpf("0.5") ** mpf("0.25") / jtheta(2, 0, mpf("0.5"))
        assert p0.lo <= ref <= p0.hi
    assert abs(p0.mid - mpf("0.46971802414148265")) < mpf("1e-16")
    ph = theta_pmf(th2, Fraction(1, 2))
    with mp.workdps(80):
        assert ph.lo <= ref2 <= ph.hi
    with pytest.raises(ValueError):
        theta_pmf(th3, Fraction(1, 2))
    with pytest.raises(ValueError):
        theta_pmf(th2, 1)
    with pytest.raises(ValueError):
        theta_distribution("theta4", Fraction(1, 2))


@pytest.mark.parametrize("variant", ["theta2", "theta3"])
@pytest.mark.parametrize("nome", [Fraction(1, 2), Fraction(1, 3), Fraction(4, 5)])
def test_theta_pmf_sums_to_one(variant, nome):
    d = theta_distribution(variant, nome, 30)
    start = 1 if d.half_integer else 0
    total = sum((theta_pmf(d, Fraction(t, 2)).mid for t in range(-start - 40, start + 41, 2) if d.in_support(t)), mpf(0))
    with iv_workdps(40):
        tail = _theta_tail_iv(d, start + 40 if start else 40)
    assert abs(total - 1) <= tail.b + mpf("1e-25")


def test_tv_and_gaps():
    th3 = theta_distribution("theta3", Fraction(1, 2), 30)
    th2 = theta_distribution("theta2", Fraction(1, 2), 30)
    tv5 = tv_distance(shifted_distribution("even", 5, 2), th3)
    tv20 = tv_distance(shifted_distribution("even", 20, 2), th3)
    assert tv20.hi < mpf("1e-3") and tv20.hi < tv5.lo
    assert tv20.width < mpf("1e-20")
    tvo = tv_distance(shifted_distribution("odd", 20, 2), th2)
    assert tvo.hi < mpf("1e-3")
    with pytest.raises(ValueError):
        tv_distance(shifted_distribution("odd", 3, 2), th3)
    same = tv_distance(shifted_distribution("even", 3, 2), shifted_distribution("even", 3, 2))
    assert same.hi == 0
    g20 = pointwise_gap(shifted_distribution("even", 20, 2), th3)
    assert g20 <= tv20.hi


def test_tv_exact_pair():
    a, b = shifted_distribution("even", 1, 2), shifted_distribution("even", 2, 2)
    tv = tv_distance(a, b)
    expected = sum(abs(a.pmf(r) - b.pmf(r)) for r in set(a.support()) | set(b.support())) / 2
    assert expected in tv


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 12), st.sampled_from(["even", "odd"]))
def test_asymptotic_p_tracks_exact(j, parity):
    # large m; k ranges around the centre
    m = 30
    k = m - 6 + j
    n = 2 * m + (parity == "odd")
    approx = asymptotic_p(parity, k, m, 2, digits=30)
    rel = abs(mpf(exact_p(k, n, 2).numerator) / exact_p(k, n, 2).denominator / approx.mid - 1)
    assert rel < mpf("1e-5")


def test_sampler_deterministic_and_distributed():
    d = theta_distribution("theta3", Fraction(1, 2), 20)
    a = sample(d, seed=7, size=1000)
    assert np.array_equal(a, sample(d, seed=7, size=1000))
    assert not np.array_equal(a, sample(d, seed=8, size=1000))
    draws = sample(d, seed=1, size=200_000)
    freq = Counter(draws.tolist())
    assert abs(freq[0.0] / 200_000 - 0.46971802) < 0.005
    assert abs(freq[1.0] / 200_000 - 0.46971802 / 2) < 0.005
    one = sample(theta_distribution("theta2", Fraction(1, 2), 20), seed=3)
    assert isinstance(one, Fraction) and one.denominator == 2
    assert isinstance(sample(d, seed=3), int)
    assert SAMPLER_TAIL == mpf(2) ** -64


def test_convergence_report_rows():
    rows = convergence_report("even", 2, range(1, 6))
    assert [r.m for r in rows] == [1, 2, 3, 4, 5]
    tvs = [r.tv.hi for r in rows]
    assert tvs == sorted(tvs, reverse=True)
    assert all(r.exact_gap <= r.tv.hi for r in rows)
