"""Generalized Cantor sets K(I, R, r) built on an integer grid.

Stage-N intervals are indexed by integers 0 <= idx < R_1 * ... * R_N; the
interval with index idx is [lo + idx L_N, lo + (idx + 1) L_N] with
L_N = (hi - lo) / (R_1 ... R_N). Deletion rules are callbacks
rule(N, candidates) returning the indices to drop, either as one array or
as {k: array} when several ancestor levels carry a budget.

Deletion budgets are keyed (N, k): at stage N at most r[N, k] intervals go
from each ancestor at stage N - k - 1 (k = 0 is the parent). A schedule
satisfies the deletion condition when for every N

    sum_k r[N, k] * prod_{i=1..k} 4 / R_{N-i}  <=  R_N / 4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import contfrac
from .errors import InvalidArgument, OutOfRange, ScheduleViolation
from .exact import as_fraction, fmt_q
from .primes import PrimeTable, table_for
from .sequences import greedy_coverings, greedy_sequence, prime_rotation_sequence, rotation_sequence

DEPTH_CAP = 12
GRID_CAP = 1 << 26  # candidates per stage


@dataclass(frozen=True)
class CantorSchedule:
    lo: Fraction
    hi: Fraction
    R: tuple
    deletions: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "lo", as_fraction(self.lo))
        object.__setattr__(self, "hi", as_fraction(self.hi))
        object.__setattr__(self, "R", tuple(int(r) for r in self.R))
        if not (0 <= self.lo < self.hi <= 1):
            raise InvalidArgument("base interval must satisfy 0 <= lo < hi <= 1")
        if any(r < 1 for r in self.R):
            raise InvalidArgument("branching factors must be >= 1")
        for (N, k), r in self.deletions.items():
            if not (1 <= N <= len(self.R)) or not (0 <= k <= N - 1) or r < 0:
                raise InvalidArgument(f"bad deletion entry ({N}, {k}) -> {r}")

    @property
    def depth(self) -> int:
        return len(self.R)

    def lhs(self, N: int) -> Fraction:
        """Weighted deletion count at stage N."""
        total = Fraction(0)
        for k in range(N):
            r = self.deletions.get((N, k), 0)
            if r:
                w = Fraction(1)
                for i in range(1, k + 1):
                    w *= Fraction(4, self.R[N - i - 1])
                total += r * w
        return total

    def check(self, N: int) -> bool:
        R_N = self.R[N - 1]
        return R_N >= 4 and self.lhs(N) <= Fraction(R_N, 4)

    def first_failure(self):
        return next((N for N in range(1, self.depth + 1) if not self.check(N)), None)

    def length(self, N: int) -> Fraction:
        return (self.hi - self.lo) / math.prod(self.R[:N])

    def budgets(self, N: int) -> dict:
        return {k: r for (n, k), r in self.deletions.items() if n == N and r > 0}

    def to_dict(self) -> dict:
        return {
            "interval": [fmt_q(self.lo), fmt_q(self.hi)],
            "R": list(self.R),
            "deletions": [[N, k, r] for (N, k), r in sorted(self.deletions.items())],
        }


@dataclass(frozen=True)
class DimensionReport:
    value: float
    valid: bool
    first_failure: int | None
    stage_values: tuple

    def to_dict(self) -> dict:
        return {"value": self.value, "valid": self.valid, "first_failure": self.first_failure,
                "stage_values": list(self.stage_values)}


def dimension_lower_bound(schedule: CantorSchedule, tail: int | None = None) -> DimensionReport:
    """min of 1 - log 2 / log R_N over the last ``tail`` stages (default: the
    second half), together with whether the deletion condition holds."""
    if schedule.depth == 0:
        raise InvalidArgument("empty schedule")
    vals = tuple(1 - math.log(2) / math.log(r) if r > 1 else -math.inf for r in schedule.R)
    if tail is None:
        tail = schedule.depth - schedule.depth // 2
    tail = max(1, min(tail, schedule.depth))
    first = schedule.first_failure()
    return DimensionReport(min(vals[-tail:]), first is None, first, vals)


# ------------------------------------------------------------------ engine


@dataclass
class SurvivorTree:
    schedule: CantorSchedule
    levels: list  # np.ndarray of surviving indices per depth, levels[0] = [0]
    deleted_max: dict  # (N, k) -> max deletions charged to one ancestor

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def counts(self) -> list:
        return [len(v) for v in self.levels]

    def length(self, N: int) -> Fraction:
        return self.schedule.length(N)

    def interval(self, N: int, idx: int) -> tuple:
        L = self.length(N)
        lo = self.schedule.lo + idx * L
        return lo, lo + L

    def intervals(self, N: int) -> list:
        return [self.interval(N, int(i)) for i in self.levels[N]]

    def total_length(self, N: int) -> Fraction:
        return len(self.levels[N]) * self.length(N)

    def contains(self, x) -> bool:
        """x lies in some deepest-level interval (closed)."""
        x = as_fraction(x)
        N = self.depth
        L = self.length(N)
        t = (x - self.schedule.lo) / L
        arr = self.levels[N]
        for idx in {math.floor(t), math.ceil(t) - 1}:
            k = int(np.searchsorted(arr, idx))
            if k < len(arr) and int(arr[k]) == idx:
                return True
        return False

    def to_json_dict(self, max_intervals: int = 10_000) -> dict:
        out = []
        for N in range(self.depth + 1):
            ivs = self.intervals(N)[:max_intervals] if N else [(self.schedule.lo, self.schedule.hi)]
            out.append({"depth": N, "count": len(self.levels[N]),
                        "intervals": [[fmt_q(a), fmt_q(b)] for a, b in ivs],
                        "truncated": len(self.levels[N]) > max_intervals})
        return {"schedule": self.schedule.to_dict(), "levels": out}


Rule = Callable[[int, np.ndarray], object]


def build_survivors(schedule: CantorSchedule, depth: int | None = None, rule: Rule | None = None,
                    strict: bool = True) -> SurvivorTree:
    """Exact survivor tree. With ``strict`` a rule exceeding a budget raises
    ScheduleViolation; otherwise the excess is only recorded."""
    depth = schedule.depth if depth is None else depth
    if depth > min(schedule.depth, DEPTH_CAP):
        raise OutOfRange(f"depth {depth} exceeds the schedule or the cap {DEPTH_CAP}")
    levels = [np.zeros(1, dtype=np.int64)]
    deleted_max: dict = {}
    for N in range(1, depth + 1):
        R_N = schedule.R[N - 1]
        if len(levels[-1]) * R_N > GRID_CAP:
            raise OutOfRange(f"stage {N} has more than {GRID_CAP} candidates")
        cand = (levels[-1][:, None] * R_N + np.arange(R_N, dtype=np.int64)).ravel()
        dropped = rule(N, cand) if rule is not None else None
        if dropped is None:
            dropped = {}
        elif not isinstance(dropped, dict):
            budgets = schedule.budgets(N)
            k0 = next(iter(budgets)) if len(budgets) == 1 else 0
            dropped = {k0: dropped}
        gone = []
        for k, arr in dropped.items():
            arr = np.unique(np.asarray(arr, dtype=np.int64))
            if not (0 <= k <= N - 1):
                raise ScheduleViolation(f"stage {N}: no ancestor level {k}", stage=N)
            if len(arr) and not np.isin(arr, cand).all():
                raise ScheduleViolation(f"stage {N}: rule deleted a non-candidate", stage=N)
            span = math.prod(schedule.R[N - k - 1 : N])
            worst = int(np.unique(arr // span, return_counts=True)[1].max()) if len(arr) else 0
            deleted_max[(N, k)] = worst
            budget = schedule.deletions.get((N, k), 0)
            if strict and worst > budget:
                raise ScheduleViolation(
                    f"stage {N}: {worst} deletions from one level-{k} ancestor, budget {budget}", stage=N)
            gone.append(arr)
        if gone:
            cand = cand[~np.isin(cand, np.concatenate(gone))]
        levels.append(cand)
    return SurvivorTree(schedule, levels, deleted_max)


# ------------------------------------------------------------- examples


def middle_third(depth: int) -> CantorSchedule:
    return CantorSchedule(Fraction(0), Fraction(1), (3,) * depth, {(N, 0): 1 for N in range(1, depth + 1)})


def middle_third_rule(N: int, cand: np.ndarray) -> np.ndarray:
    return cand[cand % 3 == 1]


def constant_schedule(R: int, depth: int) -> CantorSchedule:
    return CantorSchedule(Fraction(0), Fraction(1), (R,) * depth, {})


# ------------------------------------------------ badly approximable beta


def _grid_hits(D: int, u: int, v: int, w: int, count: int) -> tuple:
    """Index range of grid cells [i/D, (i+1)/D] (0 <= i < count) meeting
    the closed interval [u/v - 1/w, u/v + 1/w]; empty when lo > hi."""
    lo = -((-(D * (u * w - v))) // (v * w)) - 1  # ceil(D * left) - 1
    hi = (D * (u * w + v)) // (v * w)
    return max(lo, 0), min(hi, count - 1)


def _centres(beta, rule: str, n_max: int, table: PrimeTable | None) -> tuple:
    """(n, u, v) arrays with x_n = u / v for the scanned n < n_max."""
    if rule == "b":
        seq = prime_rotation_sequence(beta, max(n_max - 1, 2), table)
        ps, vs = seq.window(2, n_max - 1)
        return ps.tolist(), vs.tolist(), ps.tolist()
    if rule == "a":
        table = table_for(1, table)
        if n_max - 1 > len(table):
            raise OutOfRange(f"rule 'a' needs the {n_max - 1}-th prime, beyond the sieve limit")
        p_last = table.nth(n_max - 1)
        seq = rotation_sequence(beta, p_last, table)
        ps, vs = seq.window(2, p_last)
        ns = list(range(1, len(ps) + 1))
        return ns, vs.tolist(), ps.tolist()
    raise InvalidArgument(f"unknown centre rule {rule!r} (use 'a' or 'b')")


@dataclass(frozen=True)
class BadlyCertificate:
    beta: str
    rule: str
    R: int
    depth: int
    delta: Fraction
    stage_max: tuple  # realized max deletions per ancestor, per stage
    budgets: tuple
    passed: bool
    witness_stage: int | None
    quotient_bound: int
    dimension: DimensionReport
    f_beta: float
    scanned: int
    min_scaled_distance: float  # min n |alpha - x_n| / delta over midpoints
    midpoints_ok: bool
    survivors: int

    def to_dict(self) -> dict:
        return {
            "beta": self.beta, "rule": self.rule, "R": self.R, "depth": self.depth,
            "delta": fmt_q(self.delta), "stage_max": list(self.stage_max),
            "budgets": list(self.budgets), "passed": self.passed,
            "witness_stage": self.witness_stage, "quotient_bound": self.quotient_bound,
            "dimension": self.dimension.to_dict(), "f_beta": self.f_beta,
            "scanned": self.scanned, "min_scaled_distance": self.min_scaled_distance,
            "midpoints_ok": self.midpoints_ok, "survivors": self.survivors,
        }


def hd_badly_schedule(beta, R: int, depth: int, rule: str = "b",
                      table: PrimeTable | None = None) -> tuple:
    """Cantor set inside [0, 1/R] avoiding S_n = [x_n - delta/n, x_n + delta/n],
    delta = 1/R^2.

    Stage N removes the cells meeting some S_n with R^(N-1) <= n < R^N
    (n >= 1 at stage 1), charged to the grandparent (to the parent at
    stage 1). Centres: rule 'a' uses x_n = a_{p_n}/p_n over all n, rule
    'b' uses x_p = b_p/p over primes p.
    """
    if R < 4:
        raise InvalidArgument("R must be >= 4")
    if depth < 1 or R ** (depth + 1) > 1 << 40:
        raise OutOfRange("need depth >= 1 and R^(depth+1) <= 2^40")
    beta = contfrac.as_real(beta)
    if contfrac.is_rational(beta):
        raise InvalidArgument("beta must be irrational")
    qb = contfrac.badly_range_max(beta, 0, (depth + 2) * R.bit_length())
    delta = Fraction(1, R * R)
    n_max = R ** depth
    ns, us, vs = _centres(beta, rule, n_max, table)

    budgets = [R // 4] + [R * R // 16] * (depth - 1)
    dels = {(1, 0): budgets[0]}
    for N in range(2, depth + 1):
        dels[(N, 1)] = budgets[N - 1]
    schedule = CantorSchedule(Fraction(0), Fraction(1, R), (R,) * depth, dels)

    # cells to drop per stage; they do not depend on survivors
    drop = {}
    bounds = [1] + [R ** m for m in range(1, depth + 1)]
    for N in range(1, depth + 1):
        D, count = R ** (N + 1), R ** N
        cells = []
        for n, u, v in zip(ns, us, vs):
            if n < bounds[N - 1] or n >= bounds[N]:
                continue
            w = R * R * n
            if (u * w - v) * R > v * w:  # S_n starts right of 1/R
                continue
            lo, hi = _grid_hits(D, u, v, w, count)
            if lo <= hi:
                cells.append(np.arange(lo, hi + 1, dtype=np.int64))
        drop[N] = np.unique(np.concatenate(cells)) if cells else np.zeros(0, dtype=np.int64)

    def cb(N, cand):
        k = 0 if N == 1 else 1
        return {k: drop[N][np.isin(drop[N], cand)]}

    tree = build_survivors(schedule, depth, cb, strict=False)
    stage_max = tuple(tree.deleted_max.get((N, 0 if N == 1 else 1), 0) for N in range(1, depth + 1))
    witness = next((N for N in range(1, depth + 1) if stage_max[N - 1] > budgets[N - 1]), None)

    # midpoint scan: n |alpha - x_n| > delta for every surviving midpoint and scanned n
    surv = tree.levels[depth]
    D = R ** (depth + 1)
    best = math.inf
    ok = True
    for n, u, v in zip(ns, us, vs):
        pos = int(np.searchsorted(surv, -((-(2 * D * u - v)) // (2 * v))))
        for j in (pos - 1, pos):
            if 0 <= j < len(surv):
                gap = abs((2 * int(surv[j]) + 1) * v - 2 * D * u)  # |alpha - x| = gap / (2 D v)
                lhs, rhs = R * R * n * gap, 2 * D * v
                if lhs <= rhs:
                    ok = False
                best = min(best, lhs / rhs)
    cert = BadlyCertificate(
        beta=contfrac.format_real(beta), rule=rule, R=R, depth=depth, delta=delta,
        stage_max=stage_max, budgets=tuple(budgets), passed=witness is None,
        witness_stage=witness, quotient_bound=qb,
        dimension=dimension_lower_bound(schedule),
        f_beta=1 - math.log(2) / math.log(R * R), scanned=len(ns),
        min_scaled_distance=best, midpoints_ok=ok, survivors=len(surv),
    )
    return schedule, cert, tree


# ------------------------------------------------------- greedy sequence


@dataclass(frozen=True)
class GreedyStage:
    n: int
    p_minus: int | None
    p_plus: int | None
    R: int
    removed_max: int
    quarter_ok: bool
    bound_15c: float
    within_15c: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class GreedyCertificate:
    c: Fraction
    stages: tuple
    passed: bool
    witness_stage: int | None
    survivors: int

    def to_dict(self) -> dict:
        return {"c": fmt_q(self.c), "stages": [s.to_dict() for s in self.stages],
                "passed": self.passed, "witness_stage": self.witness_stage,
                "survivors": self.survivors}


def _iteration_pairs(seq, covering) -> list:
    ps, vs = seq.window(covering[0], covering[1])
    return list(zip(ps.tolist(), vs.tolist()))


def greedy_boundary_primes(pairs: list, c: Fraction) -> tuple:
    """(p-, p+): last prime whose open arc (a-c, a+c)/p lies in [0, 1/4] and
    first one whose arc lies in [3/4, 1]. When no arc of the iteration fits
    in [0, 1/4], p- falls back to the first prime of the iteration."""
    cn, cd = c.numerator, c.denominator
    minus = [p for p, a in pairs if a * cd >= cn and 4 * (a * cd + cn) <= p * cd]
    plus = [p for p, a in pairs if 4 * (a * cd - cn) >= 3 * p * cd and a * cd + cn <= p * cd]
    p_minus = max(minus) if minus else pairs[0][0]
    return p_minus, (min(plus) if plus else None)


def greedy_schedule(c, iterations: int, table: PrimeTable | None = None) -> tuple:
    """Cantor schedule on [1/4, 3/4] dodging the greedy arcs of each iteration.

    R_n = floor(sqrt(p-_{n+1} p+_n) / C_{n-1}), C_{n-1} = R_1 ... R_{n-1},
    or 1 while that is undefined or C_{n-1} >= p-_n. Stage n removes the
    cells meeting an open arc (a_p - c, a_p + c)/p of iteration n.
    """
    c = as_fraction(c)
    if not (0 < c <= Fraction(1, 2)):
        raise InvalidArgument("need 0 < c <= 1/2")
    if iterations < 1:
        raise InvalidArgument("iterations must be >= 1")
    try:
        seq = greedy_sequence(iterations + 1, table)
    except OutOfRange as exc:
        raise OutOfRange(f"greedy data for {iterations} stages needs {iterations + 1} coverings: {exc}")
    its = [_iteration_pairs(seq, cov) for cov in greedy_coverings(seq)]
    bnd = [greedy_boundary_primes(pairs, c) for pairs in its]

    Rs = []
    C = 1
    for n in range(1, iterations + 1):
        pm, pp = bnd[n - 1]
        pm_next = bnd[n][0]
        k = math.isqrt(pm_next * pp) // C if pp is not None else 0
        R_n = k if (pp is not None and C < pm and k >= 1) else 1
        Rs.append(R_n)
        C *= R_n
    dels = {(n, 0): Rs[n - 1] // 4 for n in range(1, iterations + 1) if Rs[n - 1] > 1}
    schedule = CantorSchedule(Fraction(1, 4), Fraction(3, 4), tuple(Rs), dels)

    def cb(n, cand):
        if Rs[n - 1] == 1:
            return {}
        C_n = math.prod(Rs[:n])
        cells = []
        for p, a in its[n - 1]:
            # open arc (l, r) meets the closed cell [1/4 + i/(2C), 1/4 + (i+1)/(2C)]
            # iff i < 2C (r - 1/4) and i > 2C (l - 1/4) - 1
            num_r = 2 * C_n * (4 * (a * c.denominator + c.numerator) - p * c.denominator)
            num_l = 2 * C_n * (4 * (a * c.denominator - c.numerator) - p * c.denominator)
            den = 4 * p * c.denominator
            hi = -((-num_r) // den) - 1  # largest i < num_r/den
            lo = num_l // den  # smallest i > num_l/den - 1
            lo, hi = max(lo, 0), min(hi, C_n - 1)
            if lo <= hi:
                cells.append(np.arange(lo, hi + 1, dtype=np.int64))
        if not cells:
            return {}
        drop = np.unique(np.concatenate(cells))
        return {0: drop[np.isin(drop, cand)]}

    tree = build_survivors(schedule, iterations, cb, strict=False)
    stages = []
    for n in range(1, iterations + 1):
        R_n = Rs[n - 1]
        removed = tree.deleted_max.get((n, 0), 0)
        b15 = float(15 * c * R_n)
        stages.append(GreedyStage(n, bnd[n - 1][0], bnd[n - 1][1], R_n, removed,
                                  R_n == 1 or 4 * removed <= R_n, b15, removed <= b15))
    witness = next((s.n for s in stages if not s.quarter_ok), None)
    cert = GreedyCertificate(c, tuple(stages), witness is None, witness, len(tree.levels[-1]))
    return schedule, cert, tree
