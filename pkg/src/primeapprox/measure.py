"""Exact Lebesgue measure of finite arc unions on R/Z and the experiments
built on it (sifted sets, sieve on average, overlap integrals, Liouville
blocks, dyadic blocks).

Endpoints are handled as integer pairs (num, den). When every denominator
is at most 2^24 the union is swept with numpy: two distinct endpoints then
differ by at least 2^-48, far above float64 rounding, so float keys order
them exactly. Otherwise a pure-integer sweep is used.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from . import contfrac, rng
from .errors import InvalidArgument, OutOfRange
from .exact import as_fraction, ceil_div, exact_sum, fmt_q, int_str, mean_variance
from .primes import PrimeTable, get_table, table_for
from .sequences import NumeratorSequence, random_sequence

FAST_DEN = 1 << 24
HALF = Fraction(1, 2)


# ----------------------------------------------------------------- kernels


def _segments_np(cnum, rnum, den, clip: bool):
    """Arc (cnum/den, rnum/den) -> segments inside [0, 1], int64 arrays."""
    cnum = np.mod(cnum, den)
    lo, hi = cnum - rnum, cnum + rnum
    if clip:
        return np.maximum(lo, 0), np.minimum(hi, den), den
    left = lo < 0
    right = hi > den
    los = [np.where(left, 0, lo)]
    his = [np.where(left, hi, np.where(right, den, hi))]
    dens = [den]
    if left.any():
        los.append(lo[left] + den[left])
        his.append(den[left])
        dens.append(den[left])
    if right.any():
        los.append(np.zeros(int(right.sum()), dtype=np.int64))
        his.append(hi[right] - den[right])
        dens.append(den[right])
    return np.concatenate(los), np.concatenate(his), np.concatenate(dens)


def _merge_np(lo, hi, den):
    """Union components; returns (lo_num, lo_den, hi_num, hi_den) arrays."""
    keep = lo * 1 < hi  # drop empty pieces
    lo, hi, den = lo[keep], hi[keep], den[keep]
    if len(lo) == 0:
        e = np.zeros(0, dtype=np.int64)
        return e, e, e, e
    lo_f = lo / den
    hi_f = hi / den
    order = np.lexsort((hi_f, lo_f))
    lo, hi, den, lo_f, hi_f = lo[order], hi[order], den[order], lo_f[order], hi_f[order]
    run = np.maximum.accumulate(hi_f)
    start = np.ones(len(lo), dtype=bool)
    start[1:] = lo_f[1:] > run[:-1]
    starts = np.flatnonzero(start)
    gid = np.cumsum(start) - 1
    gmax = np.maximum.reduceat(hi_f, starts)
    hit = np.flatnonzero(hi_f == gmax[gid])
    _, first = np.unique(gid[hit], return_index=True)
    at = hit[first]
    return lo[starts], den[starts], hi[at], den[at]


def _merge_py(lo, hi, den):
    segs = [(a, b, d) for a, b, d in zip(lo, hi, den) if a < b]
    segs.sort(key=lambda s: (s[0] / s[2], s[1] / s[2]))
    # float keys may misorder huge-denominator endpoints; verify exactly
    for k in range(len(segs) - 1):
        a1, _, d1 = segs[k]
        a2, _, d2 = segs[k + 1]
        if a1 * d2 > a2 * d1:
            segs.sort(key=lambda s: Fraction(s[0], s[2]))
            break
    out = []
    for a, b, d in segs:
        if out:
            la, ld, ha, hd = out[-1]
            if a * hd <= ha * d:  # overlaps or touches the current component
                if b * hd > ha * d:
                    out[-1] = (la, ld, b, d)
                continue
        out.append((a, d, b, d))
    return out


def _components_measure(comps) -> Fraction:
    nums, dens = [], []
    for la, ld, ha, hd in comps:
        nums += [ha, -la]
        dens += [hd, ld]
    return exact_sum(nums, dens)


def _components_measure_np(lo_n, lo_d, hi_n, hi_d) -> Fraction:
    nums = np.concatenate([hi_n, -lo_n])
    dens = np.concatenate([hi_d, lo_d])
    if len(nums) == 0:
        return Fraction(0)
    ud, inv = np.unique(dens, return_inverse=True)
    sums = np.zeros(len(ud), dtype=np.int64)
    np.add.at(sums, inv, nums)
    return exact_sum(sums.tolist(), ud.tolist())


# ---------------------------------------------------------------- IntervalSet


class IntervalSet:
    """Finite union of closed arcs [center - r, center + r] on R/Z.

    With ``clip=True`` arcs are cut to [0, 1] instead of wrapping.
    Arcs with r >= 1/2 cover the whole circle; ``clamped`` records that.
    """

    def __init__(self, arcs=(), clip: bool = False):
        self.clip = clip
        self.clamped = False
        cn, rn, dn = [], [], []
        for center, radius in arcs:
            center, radius = as_fraction(center), as_fraction(radius)
            if radius < 0:
                raise InvalidArgument("negative radius")
            if radius >= HALF and not clip:
                self.clamped = True
            d = center.denominator * radius.denominator // gcd(center.denominator, radius.denominator)
            cn.append(center.numerator * (d // center.denominator))
            rn.append(radius.numerator * (d // radius.denominator))
            dn.append(d)
        self._load(cn, rn, dn)

    @classmethod
    def from_prime_arcs(cls, primes, values, c, clip: bool = False) -> "IntervalSet":
        """Arcs a_p/p +- c/p."""
        c = as_fraction(c)
        if c < 0:
            raise InvalidArgument("negative radius")
        self = cls.__new__(cls)
        self.clip = clip
        self.clamped = False
        cd, cnum = c.denominator, c.numerator
        ps = np.asarray(primes, dtype=np.int64)
        vs = np.asarray(values, dtype=np.int64)
        if len(ps) == 0 or int(ps.max()) * cd < FAST_DEN:
            self._load(vs * cd, np.full(len(ps), cnum, dtype=np.int64), ps * cd)
        else:
            self._load([int(v) * cd for v in vs.tolist()], [cnum] * len(ps),
                       [int(p) * cd for p in ps.tolist()])
        return self

    @classmethod
    def from_scaled(cls, cnum, rnum, den, clip: bool = False) -> "IntervalSet":
        """Arcs cnum[k]/den[k] +- rnum[k]/den[k] from integer lists."""
        self = cls.__new__(cls)
        self.clip = clip
        self.clamped = False
        self._load(list(cnum), list(rnum), list(den))
        return self

    def _load(self, cn, rn, dn):
        self.size = len(dn)
        self._np = None
        self._comps = None
        self._full = bool(self.clamped)
        if self._full or self.size == 0:
            self._comps = [] if not self._full else None
            return
        if isinstance(dn, np.ndarray):
            fast = int(dn.max()) < FAST_DEN
            wide = bool(np.any(2 * np.asarray(rn) >= dn))
        else:
            fast = max(dn) < FAST_DEN
            wide = any(2 * r >= d for r, d in zip(rn, dn))
        if wide and not self.clip:
            self.clamped = self._full = True
            return
        if fast:
            cn = np.asarray(cn, dtype=np.int64)
            rn = np.asarray(rn, dtype=np.int64)
            dn = np.asarray(dn, dtype=np.int64)
            self._np = _merge_np(*_segments_np(cn, rn, dn, self.clip))
            return
        los, his, dens = [], [], []
        for c, r, d in zip(cn, rn, dn):
            c, r, d = int(c) % int(d), int(r), int(d)
            lo, hi = c - r, c + r
            if self.clip:
                los.append(max(lo, 0)); his.append(min(hi, d)); dens.append(d)
            elif lo < 0:
                los += [0, lo + d]; his += [hi, d]; dens += [d, d]
            elif hi > d:
                los += [lo, 0]; his += [d, hi - d]; dens += [d, d]
            else:
                los.append(lo); his.append(hi); dens.append(d)
        self._comps = _merge_py(los, his, dens)

    def components(self) -> list:
        """Disjoint sorted components as (lo_num, lo_den, hi_num, hi_den)."""
        if self._full:
            return [(0, 1, 1, 1)]
        if self._comps is None:
            a, b, c, d = self._np
            self._comps = list(zip(a.tolist(), b.tolist(), c.tolist(), d.tolist()))
        return self._comps

    def normalize(self) -> list:
        """Disjoint arcs sorted by left endpoint, as (lo, hi) Fractions."""
        return [(Fraction(a, b), Fraction(c, d)) for a, b, c, d in self.components()]

    def measure(self) -> Fraction:
        if self._full:
            return Fraction(1)
        if self._comps is None and self._np is not None:
            return _components_measure_np(*self._np)
        return _components_measure(self.components())

    def intersection_measure(self, other: "IntervalSet") -> Fraction:
        return intersection_measure(self.components(), other.components())


def intersection_measure(A: list, B: list) -> Fraction:
    """Measure of the intersection of two sorted disjoint component lists."""
    nums, dens = [], []
    i = j = 0
    while i < len(A) and j < len(B):
        a_lo, a_ld, a_hi, a_hd = A[i]
        b_lo, b_ld, b_hi, b_hd = B[j]
        lo, ld = (a_lo, a_ld) if a_lo * b_ld >= b_lo * a_ld else (b_lo, b_ld)
        a_first = a_hi * b_hd <= b_hi * a_hd
        hi, hd = (a_hi, a_hd) if a_first else (b_hi, b_hd)
        if lo * hd < hi * ld:
            nums += [hi, -lo]
            dens += [hd, ld]
        if a_first:
            i += 1
        else:
            j += 1
    return exact_sum(nums, dens)


def union_measure(S) -> Fraction:
    """Exact measure of an IntervalSet or of an iterable of (center, radius)."""
    if not isinstance(S, IntervalSet):
        S = IntervalSet(S)
    return S.measure()


def sweep_oracle(arcs, clip: bool = False) -> Fraction:
    """Slow independent union measure: sort all breakpoints, test midpoints."""
    pieces = []
    for center, radius in arcs:
        center, radius = as_fraction(center), as_fraction(radius)
        if not clip and radius >= HALF:
            return Fraction(1)
        c = center % 1
        pieces.append((c - radius, c + radius))
    pts = {Fraction(0), Fraction(1)}
    for lo, hi in pieces:
        for x in (lo, hi):
            pts.add(min(max(x, Fraction(0)), Fraction(1)) if clip else x % 1)
    pts = sorted(pts)
    shifts = (0,) if clip else (-1, 0, 1)
    total = Fraction(0)
    for a, b in zip(pts, pts[1:]):
        m = (a + b) / 2
        if any(lo <= m + k <= hi for lo, hi in pieces for k in shifts):
            total += b - a
    return total


# ------------------------------------------------------------------ overlap


def _is_small_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def overlap_integral(p: int, q: int, c) -> Fraction:
    """Exact measure of {alpha : ||p alpha|| < c and ||q alpha|| < c}."""
    c = as_fraction(c)
    if not (0 < c < HALF):
        raise InvalidArgument("need 0 < c < 1/2")
    if not (p < q):
        raise InvalidArgument("need p < q")
    if not (_is_small_prime(p) and _is_small_prime(q)):
        raise InvalidArgument("p and q must be prime")
    A = IntervalSet.from_scaled([a * c.denominator for a in range(p)], [c.numerator] * p,
                                [p * c.denominator] * p)
    B = IntervalSet.from_scaled([b * c.denominator for b in range(q)], [c.numerator] * q,
                                [q * c.denominator] * q)
    return A.intersection_measure(B)


# ------------------------------------------------------------------ sifted


def prime_arc_measure(seq: NumeratorSequence, X: int, Y: int, c, clip: bool = False,
                      table: PrimeTable | None = None) -> Fraction:
    """Measure of the union of I_p over X < p <= Y."""
    ps, vs = seq.require(X + 1, Y, table)
    return IntervalSet.from_prime_arcs(ps, vs, c, clip).measure()


def sifted_measure(seq: NumeratorSequence, X: int, Y: int, c, clip: bool = False,
                   table: PrimeTable | None = None) -> Fraction:
    """1 - measure of the union of I_p = [a_p/p - c/p, a_p/p + c/p], X < p <= Y."""
    if X >= Y:
        raise InvalidArgument("need X < Y")
    return 1 - prime_arc_measure(seq, X, Y, c, clip, table)


def cassels_trend(seq: NumeratorSequence, c, checkpoints, clip: bool = False) -> list:
    """Rows (X, measure with c, measure with c/2) for the union over p <= X."""
    c = as_fraction(c)
    rows = []
    for X in checkpoints:
        full = prime_arc_measure(seq, 1, X, c, clip)
        half = prime_arc_measure(seq, 1, X, c / 2, clip)
        rows.append((X, full, half))
    return rows


@dataclass(frozen=True)
class SieveRow:
    Y: int
    mean: Fraction
    variance: Fraction
    H: Fraction
    product: float


@dataclass(frozen=True)
class SieveAverageReport:
    X: int
    c: Fraction
    trials: int
    seed: int
    rows: tuple
    constant: float
    band: float
    stable: bool
    mean_decreasing: bool

    def to_dict(self) -> dict:
        return {
            "X": self.X,
            "c": fmt_q(self.c),
            "trials": self.trials,
            "seed": self.seed,
            "rows": [
                {
                    "Y": r.Y,
                    "mean": fmt_q(r.mean),
                    "mean_float": float(r.mean),
                    "variance_float": float(r.variance),
                    "H": fmt_q(r.H),
                    "H_float": float(r.H),
                    "mean_times_H": r.product,
                }
                for r in self.rows
            ],
            "constant": self.constant,
            "band": self.band,
            "stable": self.stable,
            "mean_decreasing": self.mean_decreasing,
        }


def trial_seed(seed: int, t: int) -> int:
    return rng.stream_key(seed, "trial", t)


def sieve_average_experiment(X: int, Ys, c, trials: int, seed: int = 0, threads: int = 1,
                             table: PrimeTable | None = None, clip: bool = False) -> SieveAverageReport:
    """Mean and variance of the sifted measure over random sequences.

    Trial t uses ``random_sequence(max Y, trial_seed(seed, t))``. ``stable``
    means mean*H stays within a factor-2 band across the Y values.
    """
    c = as_fraction(c)
    Ys = sorted([Ys] if isinstance(Ys, int) else list(Ys))
    if trials < 1:
        raise InvalidArgument("trials must be >= 1")
    if X >= Ys[0]:
        raise InvalidArgument("need X < Y")
    Ymax = Ys[-1]
    table = table_for(Ymax, table)

    def one(t):
        seq = random_sequence(Ymax, trial_seed(seed, t), table)
        return [sifted_measure(seq, X, Y, c, clip, table) for Y in Ys]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, range(trials)))
    else:
        results = [one(t) for t in range(trials)]
    rows = []
    for k, Y in enumerate(Ys):
        vals = [r[k] for r in results]
        mean, var = mean_variance(vals)
        H = table.mertens_sum(X, Y)
        rows.append(SieveRow(Y, mean, var, H, float(mean * H)))
    prods = [r.product for r in rows]
    band = max(prods) / min(prods) if min(prods) > 0 else math.inf
    decreasing = all(a.mean >= b.mean for a, b in zip(rows, rows[1:]))
    return SieveAverageReport(X, c, trials, seed, tuple(rows), max(prods), band,
                              band <= 2.0, decreasing)


# --------------------------------------------------------- Liouville blocks


def _liouville_check(beta):
    beta = contfrac.as_real(beta)
    if not isinstance(beta, contfrac.LiouvilleCF):
        raise InvalidArgument("counterexample blocks need a Liouville beta")
    return beta


def _block_q(beta, k: int) -> tuple:
    if k < 1 or k + 1 > beta.depth:
        raise InvalidArgument(f"k must be in 1..{beta.depth - 1} for depth {beta.depth}")
    q = contfrac.expand(beta, beta.depth + 1).q
    return q[k], q[k + 1]


@dataclass(frozen=True)
class BlockMeasure:
    k: int
    q_k: int
    q_next: int
    c: Fraction
    measure: Fraction  # exact at the rational proxy P/Q of beta
    error: Fraction  # |true - measure| <= error
    reference: float

    @property
    def upper(self) -> Fraction:
        return min(self.measure + self.error, Fraction(1))

    @property
    def lower(self) -> Fraction:
        return max(self.measure - self.error, Fraction(0))

    def to_dict(self) -> dict:
        # exact values can have huge denominators, so report floats
        return {"k": self.k, "q_k": int_str(self.q_k), "q_next": int_str(self.q_next),
                "c": fmt_q(self.c), "measure": float(self.measure), "error": float(self.error),
                "upper": float(self.upper), "lower": float(self.lower), "reference": self.reference}


def _rotation_arcs(ps: list, beta, c: Fraction, bits: int = 256):
    """Integer arcs for {p beta} +- c/p at a proxy P/Q, plus the error bound."""
    P, Q, err = contfrac.rational_approx(contfrac.frac_part(beta), bits)
    cn, cd = c.numerator, c.denominator
    cnum = [(p * P % Q) * p * cd for p in ps]
    rnum = [cn * Q] * len(ps)
    den = [Q * p * cd for p in ps]
    shift = sum(2 * p for p in ps) * err
    return cnum, rnum, den, shift


def counterexample_block_measure(beta, k: int, c, table: PrimeTable | None = None) -> BlockMeasure:
    """Measure of the union of [{p beta} - c/p, {p beta} + c/p], q_k <= p < q_{k+1}.

    The centers are irrational; the union is computed exactly at a rational
    proxy P/Q with |beta - P/Q| < 2^-256 and returned with a rigorous error
    bound (moving each center by t changes the union by at most 2t).
    """
    beta = _liouville_check(beta)
    c = as_fraction(c)
    if c <= 0:
        raise InvalidArgument("c must be positive")
    qk, qk1 = _block_q(beta, k)
    table = table or get_table()
    if qk1 - 1 > table.limit:
        raise OutOfRange(f"q_{k + 1} = {qk1} exceeds sieve limit {table.limit}")
    ps = table.primes_in(qk, qk1 - 1).tolist()
    cnum, rnum, den, shift = _rotation_arcs(ps, beta, c)
    m = IntervalSet.from_scaled(cnum, rnum, den).measure()
    ref = math.log(math.log(qk)) / math.log(qk)
    return BlockMeasure(k, qk, qk1, c, m, shift, ref)


@dataclass(frozen=True)
class BlockBound:
    k: int
    q_k: int
    q_next: int
    c: Fraction
    upper: float
    parts: dict
    reference: float
    exact: bool

    def to_dict(self) -> dict:
        return {"k": self.k, "q_k": int_str(self.q_k), "q_next": int_str(self.q_next),
                "c": fmt_q(self.c), "upper": self.upper, "parts": self.parts,
                "reference": self.reference, "exact": self.exact}


def _grid_union_upper(ps: list, beta, c: Fraction, grid_bits: int = 40) -> Fraction:
    """Rigorous upper bound for the union of [{p beta} +- c/p] by rounding
    every arc outward to the grid 2^-grid_bits."""
    G = 1 << grid_bits
    P, Q, err = contfrac.rational_approx(contfrac.frac_part(beta), 256)
    if max(ps, default=0) * err * G > Fraction(1, 4):
        raise InvalidArgument("proxy too coarse for the grid")
    scaled = (P << (grid_bits + 64)) // Q  # beta * G * 2^64, floor
    rad = [ceil_div(c.numerator * G, c.denominator * p) for p in ps]
    lo = np.empty(len(ps), dtype=np.int64)
    hi = np.empty(len(ps), dtype=np.int64)
    for k, p in enumerate(ps):
        center = ((p * scaled) >> 64) % G  # within 1 grid unit below + proxy error
        lo[k] = center - rad[k] - 2
        hi[k] = center + rad[k] + 2
    full = (hi - lo) >= G
    if full.any():
        return Fraction(1)
    den = np.full(len(ps), G, dtype=np.int64)
    # split wrap-around pieces and merge in integer grid units
    segs_lo, segs_hi = [], []
    left, right = lo < 0, hi > G
    mid = ~(left | right)
    segs_lo += [lo[mid], np.zeros(left.sum(), np.int64), lo[left] + G, lo[right], np.zeros(right.sum(), np.int64)]
    segs_hi += [hi[mid], hi[left], np.full(left.sum(), G, np.int64), np.full(right.sum(), G, np.int64), hi[right] - G]
    L = np.concatenate(segs_lo)
    H = np.concatenate(segs_hi)
    order = np.argsort(L, kind="stable")
    L, H = L[order], H[order]
    run = np.maximum.accumulate(H)
    start = np.ones(len(L), dtype=bool)
    start[1:] = L[1:] > run[:-1]
    starts = np.flatnonzero(start)
    ends = np.append(starts[1:], len(L)) - 1
    total = int((run[ends] - L[starts]).sum())
    return Fraction(min(total, G), G)


def counterexample_block_bound(beta, k: int, c, table: PrimeTable | None = None,
                               grid_bits: int = 40) -> BlockBound:
    """Rigorous upper bound for a Liouville block, also beyond the sieve.

    Up to the sieve limit N1 the union is bounded on a fine grid. For
    N1 < n <= N2 = q_{k+1} // q_k^2 every center lies within
    N2/(q_k q_{k+1}) of one of the phi(q_k) fractions j/q_k with gcd(j, q_k) = 1,
    so those arcs fit in phi(q_k) arcs of radius N2/(q_k q_{k+1}) + c/N1.
    Above N2 the bound 2c * sum 1/p is used with the Rosser-Schoenfeld
    estimates for sum 1/p (valid for N2 >= 286).
    """
    beta = _liouville_check(beta)
    c = as_fraction(c)
    qk, qk1 = _block_q(beta, k)
    table = table or get_table()
    ref = math.log(math.log(qk)) / math.log(qk)
    if qk1 - 1 <= table.limit:
        bm = counterexample_block_measure(beta, k, c, table)
        return BlockBound(k, qk, qk1, c, float(bm.upper), {"exact": float(bm.upper)}, ref, True)
    N1 = table.limit
    ps = table.primes_in(qk, N1).tolist()
    small = float(_grid_union_upper(ps, beta, c, grid_bits)) if ps else 0.0
    N2 = qk1 // (qk * qk)
    parts = {"small": small, "N1": N1, "N2": int(N2)}
    if N2 <= N1 or N2 < 286:
        raise OutOfRange("block too short for the three-range bound")
    phi = sum(1 for j in range(qk) if math.gcd(j, qk) == 1)
    rho = Fraction(N2, qk * qk1) + c / N1
    medium = min(1.0, float(2 * phi * rho))
    lx, ly = math.log(N2), math.log(qk1)
    large = 2 * float(c) * (math.log(ly) - math.log(lx) + 1 / ly ** 2 + 1 / (2 * lx ** 2))
    large *= 1 + 1e-12  # float slack
    parts.update(medium=medium, large=large)
    upper = min(1.0, small + medium + large)
    return BlockBound(k, qk, qk1, c, upper, parts, ref, False)


# ----------------------------------------------------------- dyadic blocks


@dataclass(frozen=True)
class DyadicReport:
    beta: str
    B: int
    c: Fraction
    U: int
    V: int
    counts: dict  # i -> number of primes in [2^i, 2^{i+1})
    lambdas: dict  # i -> lambda(E_i), exact
    disjoint: dict  # i -> bool
    total: Fraction
    pair_sum: Fraction  # sum_{i <= j} lambda(E_i & E_j) at the proxy
    pair_error: Fraction
    ratio: float

    @property
    def all_disjoint(self) -> bool:
        return all(self.disjoint.values())

    def to_dict(self) -> dict:
        return {
            "beta": self.beta,
            "B": self.B,
            "c": fmt_q(self.c),
            "U": self.U,
            "V": self.V,
            "blocks": [
                {"i": i, "primes": self.counts[i], "lambda": fmt_q(self.lambdas[i]),
                 "disjoint": self.disjoint[i]}
                for i in sorted(self.lambdas)
            ],
            "all_disjoint": self.all_disjoint,
            "total": fmt_q(self.total),
            "total_float": float(self.total),
            "pair_sum_float": float(self.pair_sum),
            "pair_error_float": float(self.pair_error),
            "ratio": self.ratio,
        }


def _sorted_arcs(centers: list, r: int, M: int) -> list:
    """Closed arcs [x - r, x + r] on Z/M as sorted (lo, hi) pieces in [0, M]."""
    out = []
    for x in centers:
        lo, hi = x - r, x + r
        if lo < 0:
            out += [(0, hi), (lo + M, M)]
        elif hi > M:
            out += [(lo, M), (0, hi - M)]
        else:
            out.append((lo, hi))
    out.sort()
    return out


def _overlap_len(A: list, B: list) -> int:
    total = 0
    i = j = 0
    while i < len(A) and j < len(B):
        lo = max(A[i][0], B[j][0])
        hi = min(A[i][1], B[j][1])
        if hi > lo:
            total += hi - lo
        if A[i][1] <= B[j][1]:
            i += 1
        else:
            j += 1
    return total


def dyadic_block_overlap(beta, B: int, c, U: int, V: int,
                         table: PrimeTable | None = None, bits: int = 128) -> DyadicReport:
    """E_i = union of A_{p,i} = [p beta +- c/2^{i+1}] over 2^i <= p < 2^{i+1}."""
    beta = contfrac.as_real(beta)
    c = as_fraction(c)
    if not (1 <= U <= V):
        raise InvalidArgument("need 1 <= U <= V")
    if B < 1:
        raise InvalidArgument("B must be >= 1")
    if not (0 < c < Fraction(1, 10 * B)):
        raise InvalidArgument(f"condition c < 1/(10B) fails for c={c}, B={B}")
    table = table or get_table()
    if 2 ** (V + 1) > table.limit:
        raise InvalidArgument(f"condition 2^(V+1) <= sieve limit fails (V={V})")
    if contfrac.badly_range_max(beta, U - 2, V + 2) > B:
        raise InvalidArgument(f"condition: [U-2, V+2] = [{U - 2}, {V + 2}] is not a "
                              f"{B}-badly approximable range")
    frac = contfrac.frac_part(beta)
    blocks = {i: table.primes_in(2 ** i, 2 ** (i + 1) - 1).tolist() for i in range(U, V + 1)}
    while True:
        P, Q, err = contfrac.rational_approx(frac, bits)
        W = 2 ** (V + 2) * c.denominator
        M = Q * W
        centers = {i: [(p * P % Q) * W for p in ps] for i, ps in blocks.items()}
        radius = {i: c.numerator * Q * 2 ** (V + 1 - i) for i in blocks}
        # slack in M-units for the proxy error of a center, doubled for safety
        slack = {i: 2 * math.ceil(2 ** (i + 1) * err * M) + 2 for i in blocks}
        disjoint = {}
        ambiguous = False
        for i, ps in blocks.items():
            order = sorted(range(len(ps)), key=lambda k: centers[i][k])
            xs = [centers[i][k] for k in order]
            ok = True
            for a in range(len(xs)):
                b = (a + 1) % len(xs)
                if len(xs) < 2:
                    break
                gap = (xs[b] - xs[a]) % M
                need = 2 * radius[i]
                if gap > need + 2 * slack[i]:
                    continue
                if gap < need - 2 * slack[i] or err == 0:
                    if gap <= need:
                        ok = False
                        break
                    continue
                # too close to call at this precision: settle exactly
                pa, pb = ps[order[a]], ps[order[b]]
                if contfrac.dist_le(frac, abs(pb - pa), c / 2 ** i):
                    ok = False
                    break
                ambiguous = True
            disjoint[i] = ok
        if not ambiguous or bits > 4096:
            break
        bits *= 2
    counts = {i: len(ps) for i, ps in blocks.items()}
    lambdas = {i: counts[i] * c / 2 ** i for i in blocks}
    if not all(disjoint.values()):
        lambdas = {
            i: (lambdas[i] if disjoint[i] else
                IntervalSet.from_scaled(centers[i], [radius[i]] * len(blocks[i]), [M] * len(blocks[i])).measure())
            for i in blocks
        }
    arcs = {i: _sorted_arcs(centers[i], radius[i], M) for i in blocks}
    pair_units = 0
    idx = sorted(blocks)
    for a, i in enumerate(idx):
        for j in idx[a + 1:]:
            pair_units += _overlap_len(arcs[i], arcs[j])
    total = sum(lambdas.values(), Fraction(0))
    pair_sum = total + Fraction(pair_units, M)
    moved = sum(sum(2 * p for p in ps) for ps in blocks.values()) * err
    pair_error = 2 * moved * (len(idx) - 1)
    ratio = float(pair_sum / total ** 2) if total else math.inf
    return DyadicReport(contfrac.format_real(beta), B, c, U, V, counts, lambdas, disjoint,
                        total, pair_sum, pair_error, ratio)
