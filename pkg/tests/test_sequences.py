from __future__ import annotations

import numpy as np
import pytest

from primeapprox import contfrac, sequences
from primeapprox.errors import InvalidArgument, MissingEntry, OutOfRange


def test_greedy_cover_small_starts(table):
    # radius 2/2 already covers everything
    assert sequences.greedy_cover_once(2, table) == [(2, 0)]
    assert sequences.greedy_cover_once(3, table) == [(3, 0), (5, 3)]


def test_greedy_values_in_range(greedy5):
    assert np.all(greedy5.values < greedy5.primes)
    assert greedy5[7] == 0 and greedy5[11] == 3


def test_greedy_prefix_agrees_with_full_runs(greedy5, table):
    pre = sequences.greedy_prefix(5000, table)
    ps, vs = greedy5.window(2, 5000)
    assert np.array_equal(pre.primes, ps) and np.array_equal(pre.values, vs)


def test_greedy_sequence_iterations_bounded(table):
    with pytest.raises(InvalidArgument):
        sequences.greedy_sequence(0, table)
    with pytest.raises(OutOfRange):
        sequences.greedy_cover_once(4835851, table)


def test_rotation_examples(table):
    s = sequences.rotation_sequence(contfrac.sqrt_spec(2), 10, table)
    assert (s[2], s[3], s[5]) == (0, 2, 1)
    b = sequences.prime_rotation_sequence(contfrac.sqrt_spec(2), 10, table)
    assert (b[3], b[5], b[7]) == (0, 0, 6)


def test_rotation_matches_exact_floor(table):
    beta = contfrac.GOLDEN
    s = sequences.prime_rotation_sequence(beta, 3000, table)
    frac = contfrac.frac_part(beta)
    for p, a in list(s.items())[::37]:
        assert a == contfrac.floor_mul(frac, p * p) % p


def test_random_deterministic_and_prefix_stable(table):
    a = sequences.random_sequence(10 ** 4, 7, table)
    b = sequences.random_sequence(10 ** 5, 7, table)
    assert a == sequences.random_sequence(10 ** 4, 7, table)
    ps, vs = b.window(2, 10 ** 4)
    assert np.array_equal(a.values, vs)
    assert not np.array_equal(a.values, sequences.random_sequence(10 ** 4, 8, table).values)


def test_random_uniformity_chi_square(table):
    # residues a_p mod 8 scaled by p should be roughly uniform in [0, 1)
    s = sequences.random_sequence(10 ** 6, 0, table)
    bins = np.floor(8 * s.values / s.primes).astype(int)
    counts = np.bincount(bins, minlength=8)
    exp = len(bins) / 8
    chi2 = float(((counts - exp) ** 2 / exp).sum())
    assert chi2 < 24.3  # 7 dof, p = 0.001


def test_roundtrip(tmp_path, table):
    s = sequences.make_sequence("prime-rotation", 1000, beta="golden", table=table)
    assert sequences.NumeratorSequence.loads(s.dumps()) == s
    f = tmp_path / "seq.tsv"
    s.save(f)
    assert sequences.NumeratorSequence.load(f) == s
    assert "7\t" in s.dumps()


def test_missing_and_invalid():
    s = sequences.NumeratorSequence([2, 3, 7], [1, 2, 6], 10)
    assert s[7] == 6 and 5 not in s and s.get(5) is None
    with pytest.raises(MissingEntry):
        s[5]
    with pytest.raises(MissingEntry):
        s.require(2, 7)
    with pytest.raises(InvalidArgument):
        sequences.NumeratorSequence([5], [5], 10)
    with pytest.raises(InvalidArgument):
        sequences.NumeratorSequence([3, 2], [0, 0], 10)
    with pytest.raises(InvalidArgument):
        sequences.NumeratorSequence.loads("not json\n")


def test_read_only(table):
    s = sequences.random_sequence(100, 0, table)
    with pytest.raises(ValueError):
        s.values[0] = 1
