from __future__ import annotations

import math
from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given, settings, strategies as st

from primeapprox import contfrac as cf
from primeapprox.errors import InvalidArgument, OutOfRange, PrecisionExhausted

SQRT2 = cf.sqrt_spec(2)


def test_expand_examples():
    assert cf.expand(SQRT2, 5).quotients == [1, 2, 2, 2, 2]
    assert cf.expand(cf.GOLDEN, 6).quotients == [1] * 6
    e = cf.expand(cf.Rational(22, 7), 4)
    assert e.quotients == [3, 7] and e.short
    assert list(zip(e.p, e.q)) == [(3, 1), (22, 7)]
    conv = cf.expand(SQRT2, 5)
    assert list(zip(conv.p, conv.q)) == [(1, 1), (3, 2), (7, 5), (17, 12), (41, 29)]


def test_floor_mul_examples():
    assert cf.floor_mul(SQRT2, 9) == 12
    assert cf.floor_mul(SQRT2, 25) == 35
    assert cf.floor_mul(cf.Rational(22, 7), 7) == 22


@settings(max_examples=200, deadline=None)
@given(st.integers(-10 ** 30, 10 ** 30), st.sampled_from([2, 3, 5, 7, 11, 13, 1000003]))
def test_floor_mul_isqrt(m, d):
    want = isqrt(d * m * m) if m >= 0 else -isqrt(d * m * m) - 1
    assert cf.floor_mul(cf.sqrt_spec(d), m) == want


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 50), st.integers(1, 10 ** 6))
def test_floor_affine_vs_mpmath(m, t):
    import mpmath

    mpmath.mp.dps = 60
    beta = cf.GOLDEN
    frac = Fraction(t, 999_983)
    want = int(mpmath.floor(m * (1 + mpmath.sqrt(5)) / 2 + mpmath.mpf(t) / 999_983))
    assert cf.floor_affine(beta, m, frac) == want


def test_convergent_invariants():
    conv = cf.expand(cf.sqrt_spec(7), 40)
    p, q = conv.p, conv.q
    assert all(math.gcd(a, b) == 1 for a, b in zip(p, q))
    assert all(b2 > b1 for b1, b2 in zip(q[1:], q[2:]))


def test_periodic_cf_matches_surd():
    b = cf.parse_real("cf:1;(2)")
    assert cf.expand(b, 10).quotients == cf.expand(SQRT2, 10).quotients
    assert cf.floor_mul(b, 10 ** 20) == isqrt(2 * 10 ** 40)


def test_prefix_cf_runs_out():
    b = cf.parse_real("cf:0;1,2,3")
    with pytest.raises(PrecisionExhausted):
        cf.floor_mul(b, 10 ** 30)


def test_grammar_roundtrip():
    for s in ("golden", "sqrt:3", "rat:22/7", "surd:1,2,7,3", "cf:0;1,2,(3,4)", "liouville:3"):
        assert cf.format_real(cf.parse_real(s)) == s
    for bad in ("sqrt:4.5", "pi", "rat:0.3", "cf:x"):
        with pytest.raises(InvalidArgument):
            cf.parse_real(bad)


def test_liouville_quotients():
    q = cf.liouville_quotients(3)
    assert q[:3] == (0, 3, 21)
    conv = cf.expand(cf.LiouvilleCF(3), 4)
    assert conv.q[:3] == [1, 3, 64]
    with pytest.raises(OutOfRange):
        cf.LiouvilleCF(4)
    with pytest.raises(InvalidArgument):
        cf.LiouvilleCF(0)


def test_dist_le_exact():
    # ||5 sqrt2|| = 7.0710678... -> 0.0710678
    assert cf.dist_le(SQRT2, 5, Fraction(72, 1000))
    assert not cf.dist_le(SQRT2, 5, Fraction(71, 1000))


def test_iba_certify():
    assert cf.iba_certify(cf.GOLDEN, 1, Fraction(1, 2), 50).windows
    assert cf.iba_certify(SQRT2, 2, Fraction(1, 2), 50).windows
    assert cf.iba_certify(cf.LiouvilleCF(3), 3, Fraction(1, 2), 3).windows == ()


def test_badly_range():
    assert cf.badly_range_max(cf.GOLDEN, 0, 30) == 1
    assert cf.is_badly_range(SQRT2, 2, 1, 40)
    assert not cf.is_badly_range(SQRT2, 1, 1, 40)


def test_fuchs_kim_monotone():
    a = cf.fuchs_kim_partial(cf.GOLDEN, 1000)
    b = cf.fuchs_kim_partial(cf.GOLDEN, 100000)
    assert 0 < a < b


def test_dv_statistic():
    s, ref = cf.dv_statistic(cf.GOLDEN, 5)
    assert s == 4
    assert ref == pytest.approx(5 * math.log(5) / math.log(2))


def test_gauss_dv_ratio():
    qs = cf.gauss_quotients(10 ** 4, seed=0)
    K = len(qs)
    ratio = (qs.sum() - qs.max()) / (K * math.log(K) / math.log(2))
    assert 0.5 < ratio < 1.5
