from fractions import Fraction
from math import gcd, prod

import numpy as np
import pytest
from hypothesis import given, strategies as st

from apollonian.depth import rmc
from apollonian.factor import factor_with_spf, spf_sieve
from apollonian.tangency import (
    position_class_means, predict_spikes, rmc0, rmc0_points, sp_bruteforce, sp_closed_form, sp_hensel,
    tangency_bruteforce, tangency_estimate, tangency_number,
)


def test_bruteforce_examples():
    assert tangency_bruteforce(1, 1) == 1
    assert tangency_bruteforce(3, 5) == 0
    assert tangency_bruteforce(7, -2) == 1
    with pytest.raises(ValueError):
        tangency_bruteforce(3, -3)


def test_local_factor_examples():
    assert sp_closed_form(5, 2, 5) == 3
    assert sp_closed_form(2, 1, 1) == 1
    assert sp_closed_form(3, 1, 3) == 0
    assert sp_bruteforce(5, 2, 5) == 3
    assert sp_bruteforce(2, 1, 1) == 1
    assert sp_bruteforce(3, 2, 3) == 3
    with pytest.raises(ValueError):
        sp_closed_form(5, 0, 1)


def test_estimate_examples():
    assert tangency_estimate(1, 1) == Fraction(1, 2)
    assert tangency_estimate(3, 5) == 0
    assert tangency_estimate(7, -2) == 1
    assert tangency_number(7, -2) == 1


@given(st.sampled_from([2, 3, 5, 7, 11, 13]), st.integers(1, 5), st.integers(0, 3), st.integers(1, 20))
def test_hensel_count_matches_bruteforce(p, e, f, m):
    c1 = p ** f * m
    assert sp_hensel(p, e, c1) == sp_bruteforce(p, e, c1)


@given(st.integers(1, 3000), st.integers(-2999, 3000))
def test_exact_tangency_matches_bruteforce(c1, c2):
    if c1 + c2 <= 0:
        c2 = 1 - c1
    assert tangency_number(c1, c2) == tangency_bruteforce(c1, c2)
    diff = tangency_bruteforce(c1, c2) - tangency_estimate(c1, c2)
    assert 0 <= diff <= 1


def _direct_count(A, c1):
    x = np.arange(A, dtype=np.int64)
    num = x * x + c1 * c1
    ok = num % A == 0
    return int(np.count_nonzero(ok & (np.gcd(np.gcd(A, 2 * x), num // A) == 1)))


@pytest.mark.slow
def test_multiplicativity_up_to_1e4():
    spf = spf_sieve(10 ** 4)
    for c1 in (1, 6, 25, 98, 135):
        for A in range(1, 10 ** 4 + 1):
            fac = factor_with_spf(A, spf)
            want = prod(sp_bruteforce(p, e, c1) for p, e in fac.items())
            assert want == _direct_count(A, c1), (A, c1)


def test_rmc0_examples():
    m = rmc0(7)
    assert [c for c, k in enumerate(m) if k] == [2, 5, 6] and max(m) == 1
    assert rmc0(1) == [1]
    assert rmc0_points(rmc0(7)) == {Fraction(2, 7): 1, Fraction(5, 7): 1, Fraction(6, 7): 1}


def test_rmc0_counts_bottom_classes():
    spf = spf_sieve(500)
    for n in range(1, 501):
        recs = rmc(n)
        bottom = sum(1 for r in recs if r.bottom)
        assert sum(rmc0(n, spf)) == bottom, n
        assert bottom == sum(1 for r in recs if r.depth == 0 and r.bottom)
        assert bottom <= len(recs)


def test_rmc0_positions_match_depth_pipeline():
    for n in (97, 210, 361, 500):
        from_depth = sorted(r.mc for r in rmc(n) if r.bottom)
        m = rmc0(n)
        from_t = sorted(c for c, k in enumerate(m) for _ in range(k))
        assert from_depth == from_t


def test_spike_examples():
    assert predict_spikes(10007).rows == []
    rep = predict_spikes(25947)
    assert rep.primes == [3, 31]
    assert rep.positions(31) == list(range(25947 % 961, 25947, 961))
    assert predict_spikes(42728555).primes == [5, 101, 211, 401]
    for r in predict_spikes(26516187).rows:
        assert r.p * r.p <= 26516187 and 26516187 % r.p == 0
    with pytest.raises(ValueError):
        predict_spikes(1)


def test_spike_csv():
    lines = predict_spikes(25947).to_csv().splitlines()
    assert lines[0] == "p,e,f,positions_modulus,magnitude_class"
    assert "31,2,2,961,31" in lines


def test_position_class_means():
    mean, size = position_class_means([1, 2, 3, 4, 5, 6], 3, 1)
    assert (mean, size) == (3.5, 2)


def test_bruteforce_large_c1_path():
    # c1^2 beyond int64 takes the pure-Python loop
    for p, e in ((3, 2), (5, 3), (2, 4)):
        c1 = p ** 2 * (2 ** 32 + 15)
        assert sp_bruteforce(p, e, c1) == sp_hensel(p, e, c1) == sp_closed_form(p, e, c1)
