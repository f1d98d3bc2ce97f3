from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from primeapprox import contfrac, hits, sequences
from primeapprox.errors import InvalidArgument

F = Fraction


def test_count_hits_example(greedy5):
    assert hits.count_hits(0, greedy5, 10, F(1, 2)) == 3
    assert hits.count_hits_naive(0, greedy5, 10, F(1, 2)) == 3


def test_psi_examples(table):
    assert hits.psi(10, F(1, 2), table) == F(247, 210)
    assert hits.psi(3, F(1, 4), table) == F(5, 12)
    with pytest.raises(InvalidArgument):
        hits.psi(1, F(1, 4))


@settings(max_examples=40, deadline=None)
@given(st.fractions(min_value=-3, max_value=3, max_denominator=10 ** 6),
       st.sampled_from([F(1, 2), F(1, 4), F(1, 10), F(3, 7)]))
def test_fast_matches_naive_rational(alpha, c):
    seq = sequences.random_sequence(2000, 11)
    assert hits.count_hits(alpha, seq, 2000, c) == hits.count_hits_naive(alpha, seq, 2000, c)


@pytest.mark.parametrize("spec", ["sqrt:2", "golden", "liouville:3"])
def test_fast_matches_naive_real(spec, table):
    seq = sequences.random_sequence(3000, 2, table)
    beta = contfrac.parse_real(spec)
    assert hits.count_hits(beta, seq, 3000, F(1, 3)) == hits.count_hits_naive(beta, seq, 3000, F(1, 3))


def test_bad_c(greedy5):
    for c in (F(0), F(3, 5)):
        with pytest.raises(InvalidArgument):
            hits.count_hits(0, greedy5, 10, c)


def test_sample_points_deterministic():
    a = hits.sample_points(4, 50)
    assert np.array_equal(a, hits.sample_points(4, 50))
    assert not np.array_equal(a, hits.sample_points(5, 50))


def test_growth_counts_match_exact(table):
    seq = sequences.random_sequence(20_000, 1, table)
    us = hits.sample_points(1, 5)
    counts = hits.growth_counts(us, seq, F(1, 4), [1000, 20_000])
    for u, row in zip(us.tolist(), counts.tolist()):
        alpha = F(int(u), 1 << hits.SAMPLE_BITS)
        assert row == [hits.count_hits(alpha, seq, X, F(1, 4)) for X in (1000, 20_000)]


def test_mean_hits_near_psi(table):
    seq = sequences.random_sequence(10 ** 4, 0, table)
    rep = hits.mc_mean_hits(seq, 10 ** 4, F(1, 4), 400, seed=1, table=table)
    assert abs(rep.z) < 4


def test_growth_table_csv(greedy5):
    rep = hits.growth_table("0/1", greedy5, F(1, 2), [10, 100])
    csv = rep.to_csv().splitlines()
    assert len(csv) == 3
