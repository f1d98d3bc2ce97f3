from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from primeapprox import primes
from primeapprox.errors import InvalidArgument, OutOfRange


def _naive_primes(n):
    return [k for k in range(2, n + 1) if all(k % d for d in range(2, math.isqrt(k) + 1))]


def test_small_tables():
    assert primes.build_table(10).primes.tolist() == [2, 3, 5, 7]
    assert primes.build_table(2).primes.tolist() == [2]
    assert primes.build_table(47).index_of(47) == 15


def test_table_matches_naive_across_segments():
    # spans several sieve segments
    t = primes.PrimeTable(1_200_000)
    assert len(t) == 92_938
    assert t.primes[:200].tolist() == _naive_primes(1223)[:200]


def test_rank_roundtrip(table):
    for k in (0, 1, 999, 78_497, len(table) - 1):
        p = int(table.primes[k])
        assert table.index_of(p) == k + 1
        assert table.nth(k + 1) == p
    assert table.pi(10 ** 6) == 78_498


def test_rank_errors(table):
    with pytest.raises(InvalidArgument):
        table.index_of(15)
    with pytest.raises(OutOfRange):
        table.nth(len(table) + 1)
    with pytest.raises(OutOfRange):
        table.is_prime(table.limit + 1)
    with pytest.raises(InvalidArgument):
        primes.PrimeTable(1)


def test_primes_array_read_only(table):
    with pytest.raises(ValueError):
        table.primes[0] = 4


def test_next_prime(table):
    assert table.next_prime(7) == 11
    assert table.next_prime(1) == 2


def test_mertens_examples(table):
    assert table.mertens_sum(2, 3) == Fraction(1, 3)
    assert table.mertens_sum(1, 10) == Fraction(247, 210)
    with pytest.raises(InvalidArgument):
        table.mertens_sum(5, 5)


def test_mertens_bounded_against_loglog(table):
    gaps = [float(table.mertens_float(1, Y)) - math.log(math.log(Y)) for Y in (10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6)]
    # Mertens constant is about 0.2615
    assert all(0.2 < g < 0.33 for g in gaps)
    assert max(gaps) - min(gaps) < 0.02


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 400), st.integers(1, 400))
def test_mertens_exact_matches_fraction_sum(x, span):
    t = primes.get_table()
    y = x + span
    want = sum((Fraction(1, p) for p in _naive_primes(y) if p > x), Fraction(0))
    assert t.mertens_sum(x, y) == want


def test_shifted_prime_examples(table):
    assert table.shifted_prime_count(20, 2) == 4
    assert table.shifted_prime_count(10, 1) == 1


def test_shifted_prime_bound_stable(table):
    ratios = []
    for x in (10 ** 4, 10 ** 5, 10 ** 6):
        for h in (2, 6, 30, 100):
            ratios.append(table.shifted_prime_count(x, h) / primes.shifted_prime_reference(x, h))
    assert max(ratios) / min(ratios) < 3
    assert max(ratios) < 4


def test_shifted_prime_limits(table):
    with pytest.raises(OutOfRange):
        table.shifted_prime_count(table.limit, 2)
    with pytest.raises(InvalidArgument):
        table.shifted_prime_count(10, 0)


def test_euler_phi():
    assert [primes.euler_phi(n) for n in (1, 2, 9, 12, 97)] == [1, 1, 6, 4, 96]


def test_env_limit(monkeypatch):
    monkeypatch.setenv(primes.ENV_LIMIT, "1000")
    assert primes.default_limit() == 1000
    monkeypatch.setenv(primes.ENV_LIMIT, "abc")
    with pytest.raises(InvalidArgument):
        primes.default_limit()
