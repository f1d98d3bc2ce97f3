from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from primeapprox import cantor, contfrac
from primeapprox.errors import InvalidArgument, OutOfRange, ScheduleViolation

F = Fraction


def test_middle_third_tree():
    tree = cantor.build_survivors(cantor.middle_third(3), rule=cantor.middle_third_rule)
    assert tree.counts() == [1, 2, 4, 8]
    assert tree.intervals(2) == [(0, F(1, 9)), (F(2, 9), F(1, 3)), (F(2, 3), F(7, 9)), (F(8, 9), 1)]
    assert tree.total_length(3) == F(8, 27)
    assert tree.contains(F(1, 4)) and not tree.contains(F(1, 2))


def test_middle_third_dimension_reported_not_valid():
    rep = cantor.dimension_lower_bound(cantor.middle_third(8))
    assert rep.value == pytest.approx(1 - math.log(2) / math.log(3), abs=1e-12)
    assert not rep.valid and rep.first_failure == 1


def test_constant_schedule_dimension():
    rep = cantor.dimension_lower_bound(cantor.constant_schedule(4, 5))
    assert rep.valid and rep.value == pytest.approx(0.5)
    s = cantor.CantorSchedule(0, 1, tuple(4 ** n for n in range(1, 11)))
    assert cantor.dimension_lower_bound(s).value == pytest.approx(1 - 1 / 12)


def test_lhs_weights():
    s = cantor.CantorSchedule(0, 1, (8, 16), {(2, 0): 1, (2, 1): 2})
    assert s.lhs(2) == 1 + 2 * F(4, 8)
    assert s.check(2)
    assert cantor.CantorSchedule(0, 1, (8, 8), {(2, 0): 1, (2, 1): 2}).check(2)  # equality
    assert not cantor.CantorSchedule(0, 1, (8, 4), {(2, 0): 1, (2, 1): 2}).check(2)


def test_schedule_validation():
    with pytest.raises(InvalidArgument):
        cantor.CantorSchedule(0, 1, (4,), {(1, 1): 1})
    with pytest.raises(InvalidArgument):
        cantor.CantorSchedule(F(1, 2), F(1, 4), (4,))


def test_budget_violation():
    s = cantor.CantorSchedule(0, 1, (4, 4), {(1, 0): 1, (2, 0): 1})

    def greedy_rule(N, cand):
        return cand[:2]

    with pytest.raises(ScheduleViolation):
        cantor.build_survivors(s, rule=greedy_rule)
    tree = cantor.build_survivors(s, rule=greedy_rule, strict=False)
    assert tree.deleted_max[(1, 0)] == 2


def test_depth_cap():
    with pytest.raises(OutOfRange):
        cantor.build_survivors(cantor.constant_schedule(4, 13))


def test_hd_badly_certificate():
    sched, cert, tree = cantor.hd_badly_schedule(contfrac.sqrt_spec(2), 64, 2)
    assert cert.passed and cert.midpoints_ok
    assert all(m <= b for m, b in zip(cert.stage_max, cert.budgets))
    assert cert.survivors == tree.counts()[-1] > 0
    assert cert.min_scaled_distance >= 1
    with pytest.raises(InvalidArgument):
        cantor.hd_badly_schedule(contfrac.sqrt_spec(2), 3, 2)


def test_greedy_certificate():
    sched, cert, tree = cantor.greedy_schedule(F(1, 100), 4)
    assert cert.passed
    used = [s for s in cert.stages if s.R > 1]
    assert used and all(s.quarter_ok and s.within_15c for s in used)


def test_greedy_certificate_fails_for_large_c():
    _, cert, _ = cantor.greedy_schedule(F(1, 10), 4)
    assert not cert.passed and cert.witness_stage is not None


def test_greedy_needs_extra_covering():
    with pytest.raises(OutOfRange):
        cantor.greedy_schedule(F(1, 100), 5)
