from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from primeapprox import contfrac, measure, sequences
from primeapprox.errors import InvalidArgument, OutOfRange
from primeapprox.measure import IntervalSet

F = Fraction


def test_union_examples():
    assert measure.union_measure([(F(1, 4), F(1, 4)), (F(1, 2), F(1, 4))]) == F(3, 4)
    # wraps around 0
    assert measure.union_measure([(F(0), F(1, 4))]) == F(1, 2)
    assert measure.union_measure([(F(0), F(1, 4))] * 3) == F(1, 2)
    assert measure.union_measure([]) == 0


def test_clip_vs_wrap():
    arcs = [(F(0), F(1, 4))]
    assert IntervalSet(arcs, clip=True).measure() == F(1, 4)
    full = IntervalSet([(F(1, 3), F(1, 2))])
    assert full.clamped and full.measure() == 1


def test_normalize_sorted_disjoint():
    s = IntervalSet([(F(3, 4), F(1, 8)), (F(1, 4), F(1, 8)), (F(5, 16), F(1, 8))])
    comps = s.normalize()
    assert comps == sorted(comps)
    assert all(a[1] < b[0] for a, b in zip(comps, comps[1:]))
    assert sum(hi - lo for lo, hi in comps) == s.measure()


arc = st.tuples(st.fractions(min_value=-2, max_value=3, max_denominator=60),
                st.fractions(min_value=0, max_value=F(3, 5), max_denominator=60))


@settings(max_examples=150, deadline=None)
@given(st.lists(arc, max_size=12), st.booleans())
def test_union_matches_sweep(arcs, clip):
    assert IntervalSet(arcs, clip=clip).measure() == measure.sweep_oracle(arcs, clip=clip)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 10 ** 9), st.integers(1, 10 ** 3)), min_size=1, max_size=10))
def test_big_denominators_take_python_path(items):
    den = (1 << 30) + 3
    arcs = [(F(c, den), F(r, den)) for c, r in items]
    assert IntervalSet(arcs).measure() == measure.sweep_oracle(arcs)


def test_overlap_examples():
    assert measure.overlap_integral(2, 3, F(1, 4)) == F(1, 4)
    for bad in ((3, 2, F(1, 4)), (4, 5, F(1, 4)), (2, 3, F(1, 2)), (2, 3, F(0))):
        with pytest.raises(InvalidArgument):
            measure.overlap_integral(*bad)


@pytest.mark.parametrize("p,q", [(2, 5), (3, 7), (11, 13), (29, 97)])
def test_overlap_independence_bound(p, q):
    for c in (F(1, 10), F(1, 5), F(2, 5)):
        v = measure.overlap_integral(p, q, c)
        assert 0 < v <= 4 * c * c + 2 * c / q
        assert v <= 2 * c  # contained in either strip


def test_single_prime_sifted():
    s = sequences.NumeratorSequence([7], [3], 7)
    c = F(1, 5)
    assert measure.sifted_measure(s, 5, 7, c) == 1 - F(2, 5) / 7


def test_greedy_covering_sifts_everything(greedy5):
    lo, hi = sequences.greedy_coverings(greedy5)[2]
    assert measure.sifted_measure(greedy5, lo - 1, hi, 2, clip=True) == 0


def test_sifted_requires_all_primes():
    from primeapprox.errors import MissingEntry

    s = sequences.NumeratorSequence([2, 5], [0, 1], 5)
    with pytest.raises(MissingEntry):
        measure.sifted_measure(s, 1, 5, F(1, 4))


def test_sieve_average_small():
    rep = measure.sieve_average_experiment(10, [100, 1000], F(1, 4), 20, seed=3)
    again = measure.sieve_average_experiment(10, [100, 1000], F(1, 4), 20, seed=3, threads=3)
    assert rep.to_dict() == again.to_dict()
    assert [r.Y for r in rep.rows] == [100, 1000]
    assert all(0 < r.mean < 1 for r in rep.rows)


def test_counterexample_blocks():
    beta = contfrac.LiouvilleCF(3)
    b1 = measure.counterexample_block_measure(beta, 1, F(1, 2))
    assert b1.lower <= b1.upper
    with pytest.raises(OutOfRange):
        measure.counterexample_block_measure(beta, 2, F(1, 2))
    b2 = measure.counterexample_block_bound(beta, 2, F(1, 2))
    assert b2.upper > 0 and b2.upper / b2.reference <= 10


def test_dyadic_overlap_golden():
    rep = measure.dyadic_block_overlap(contfrac.GOLDEN, 1, F(1, 20), 4, 8)
    assert rep.all_disjoint
    assert rep.total >= F(1, 20)
