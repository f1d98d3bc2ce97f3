from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from primeapprox import bohr, contfrac, primes
from primeapprox.errors import InvalidArgument, OutOfRange

SQRT2 = contfrac.sqrt_spec(2)


@pytest.fixture(scope="module")
def sqrt2_table():
    return bohr.BohrTable(SQRT2, 12)


def test_small_example():
    assert bohr.bohr_enumerate(SQRT2, 2, 3).members == (2, 3, 5, 7)
    assert bohr.bohr_enumerate(SQRT2, 0, 4).members == tuple(range(1, 17))


def test_levels_exact(sqrt2_table):
    for i in range(0, 8):
        got = set(sqrt2_table.members(i, 10).tolist())
        want = {n for n in range(1, 1 << 10) if contfrac.dist_le(SQRT2, n, Fraction(1, 1 << i))}
        want |= {1 << 10} if contfrac.dist_le(SQRT2, 1 << 10, Fraction(1, 1 << i)) else set()
        assert got == want


def test_monotone_in_i_and_j(sqrt2_table):
    for j in range(2, 12):
        for i in range(1, j):
            a = set(sqrt2_table.members(i + 1, j).tolist())
            b = set(sqrt2_table.members(i, j).tolist())
            c = set(sqrt2_table.members(i, j + 1).tolist())
            assert a <= b <= c


def test_sum_lands_one_level_down(sqrt2_table):
    i, j = 5, 12
    mem = sqrt2_table.members(i, j)
    lower = set(sqrt2_table.members(i - 1, j).tolist())
    for n1 in mem[:40].tolist():
        for n2 in mem[:40].tolist():
            if n1 + n2 <= 1 << j:
                assert n1 + n2 in lower


def test_bounds():
    with pytest.raises(OutOfRange):
        bohr.bohr_enumerate(SQRT2, 1, 25)
    with pytest.raises(InvalidArgument):
        bohr.bohr_enumerate(SQRT2, 4, 3)


def test_gap_example():
    spec = bohr.gap_params(SQRT2, 2, 3, 2)
    assert spec == bohr.GapSpec(12, 17, 5)
    assert bohr.gap_witness(spec, 2) == (3, -2)
    assert all(bohr.gap_contains(spec, n) for n in (2, 3, 5, 7))


def test_gap_rejects_bad_range():
    with pytest.raises(InvalidArgument):
        bohr.gap_params(SQRT2, 2, 5, 1)
    with pytest.raises(InvalidArgument):
        bohr.GapSpec(4, 6, 1)


@pytest.mark.parametrize("beta,B", [(SQRT2, 2), (contfrac.GOLDEN, 1), (contfrac.sqrt_spec(3), 2)])
def test_gap_covers_bohr(beta, B):
    tab = bohr.BohrTable(beta, 12)
    for j in range(1, 13):
        for i in range(1, j + 1):
            spec = bohr.gap_params(beta, i, j, B)
            assert bohr.gap_contains_many(spec, tab.members(i, j)).all()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 30), st.integers(1, 30), st.integers(0, 6), st.integers(-3000, 3000))
def test_gap_membership_vs_bruteforce(x, dy, z, n):
    y = x + dy
    if np.gcd(x, y) != 1:
        return
    spec = bohr.GapSpec(x, y, z)
    brute = any(a * x + b * y == n for a in range(-z, z + 1) for b in range(-z, z + 1))
    assert bohr.gap_contains(spec, n) == brute
    assert bool(bohr.gap_contains_many(spec, [n])[0]) == brute


def test_phi_average_examples():
    assert bohr.gap_phi_average(bohr.GapSpec(1, 2, 2)) == Fraction(43, 4)
    assert bohr.gap_phi_average(bohr.GapSpec(1, 2, 0)) == 0


def test_totient_sieve():
    phi = bohr.totient_sieve(2000)
    assert phi[12] == 4
    assert all(int(phi[n]) == primes.euler_phi(n) for n in range(1, 2001))
