from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from primeapprox import sequences, trace
from primeapprox.errors import InvalidArgument, OutOfRange

F = Fraction


def test_p2_cancels():
    # y = 0, a = 1: e(x) (1 + e(-1/2)) / 2 = 0
    assert abs(trace.s_direct(2, 1, F(1, 3), 0)) < 1e-15
    assert abs(trace.s_closed(2, 1, F(1, 3), 0)) < 1e-15


def test_resonance_has_modulus_one():
    for p, a in ((5, 2), (101, 7), (99991, 12345)):
        assert trace.abs_s(p, a, F(a, p)) == 1.0
        assert abs(trace.s_direct(p, a, 0, F(a, p)) - 1) < 1e-9


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 13, 97, 997]), st.integers(0, 10 ** 6),
       st.floats(0, 1, exclude_max=True), st.floats(0, 1, exclude_max=True))
def test_closed_matches_direct(p, a, x, y):
    a %= p
    assert abs(trace.s_closed(p, a, x, y) - trace.s_direct(p, a, x, y)) < 1e-10


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([3, 31, 1009]), st.integers(0, 10 ** 6), st.fractions(0, 1, max_denominator=10 ** 6))
def test_kernel_bound(p, a, y):
    a %= p
    th = abs(trace._theta(p, a, y))
    if th > 0:
        assert trace.abs_s(p, a, y) <= 1 / (2 * p * th) + 1e-12


def test_argument_checks():
    with pytest.raises(InvalidArgument):
        trace.s_closed(7, 7, 0, 0)
    with pytest.raises(OutOfRange):
        trace.s_direct(100_003, 1, 0, 0)
    with pytest.raises(InvalidArgument):
        trace.trace_average(7, 1, 0, 0, method="fft")


def test_scan_monotone_and_consistent(table):
    seq = sequences.greedy_prefix(10 ** 5, table)
    y = trace.sample_y(1, 1)[0]
    prev = None
    for t in (0.3, 0.5, 0.7, 0.9):
        scan = trace.divergence_scan(seq, y, 10 ** 5, t)
        assert scan.consistent
        if prev is not None:
            assert set(scan.primes) <= set(prev.primes)
        prev = scan
    assert trace.kappa(0.5) == 1.0


def test_scan_matches_abs_s(table):
    seq = sequences.random_sequence(5000, 3, table)
    y = F(12345, 1 << 20)
    scan = trace.divergence_scan(seq, y, 5000, 0.25)
    want = [p for p, a in seq.items() if trace.abs_s(p, a, y) >= 0.25]
    assert list(scan.primes) == want
    assert scan.to_csv().splitlines()[0] == "p,theta,abs_s"


def test_scan_finds_planted_resonance():
    seq = sequences.NumeratorSequence([2, 3, 5, 7], [1, 2, 3, 4], 7)
    scan = trace.divergence_scan(seq, F(3, 5), 7, 0.99)
    assert 5 in scan.primes


def test_sample_y_dyadic():
    ys = trace.sample_y(0, 10)
    assert ys == trace.sample_y(0, 10)
    assert all(0 <= y < 1 and (y.denominator & (y.denominator - 1)) == 0 for y in ys)
