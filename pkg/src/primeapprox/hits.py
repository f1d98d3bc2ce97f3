"""Hit counts N_X(alpha) = #{p <= X : ||alpha - a_p/p|| <= c/p} and their
expectation Psi(X) = 2c * sum_{p <= X} 1/p."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import contfrac, rng
from .errors import InvalidArgument
from .exact import as_fraction, fmt_q
from .primes import PrimeTable, get_table, table_for
from .sequences import NumeratorSequence

SAMPLE_BITS = 38  # sample points are u / 2^38, so p * u fits in int64 for p < 2^24
_VEC_LIMIT = 1 << 24


def _check_c(c: Fraction):
    if not (0 < c <= Fraction(1, 2)):
        raise InvalidArgument("need 0 < c <= 1/2")


def _alpha(alpha):
    """Fraction for exact rationals, RealSpec otherwise."""
    if isinstance(alpha, (contfrac.QuadraticSurd, contfrac.ExplicitCF, contfrac.LiouvilleCF)):
        return alpha
    if isinstance(alpha, contfrac.Rational):
        return alpha.value
    if isinstance(alpha, str) and ":" in alpha or alpha == "golden":
        spec = contfrac.parse_real(alpha)
        return spec.value if isinstance(spec, contfrac.Rational) else spec
    return as_fraction(alpha)


def hit_mask_rational(alpha: Fraction, ps: np.ndarray, vs: np.ndarray, c: Fraction) -> np.ndarray:
    """Boolean mask of hits for an exact rational alpha."""
    u, v = (alpha % 1).numerator, (alpha % 1).denominator
    if len(ps) == 0:
        return np.zeros(0, dtype=bool)
    if int(ps.max()) * v < (1 << 62) // 4:
        pv = ps * v
        D = np.mod(ps * u - vs * v, pv)
        dist = np.minimum(D, pv - D)
        # dist/(p v) <= c/p  <=>  dist <= floor(c v)
        return dist <= (c.numerator * v) // c.denominator
    thr = (c.numerator * v) // c.denominator
    out = []
    for p, a in zip(ps.tolist(), vs.tolist()):
        D = (p * u - a * v) % (p * v)
        out.append(min(D, p * v - D) <= thr)
    return np.array(out, dtype=bool)


def _hit_real(beta, p: int, a: int, c: Fraction) -> bool:
    # integer k in [beta - (a+c)/p, beta - (a-c)/p]  <=>  floors differ
    lo = contfrac.floor_affine(beta, 1, Fraction(-(a * c.denominator + c.numerator), p * c.denominator))
    hi = contfrac.floor_affine(beta, 1, Fraction(-(a * c.denominator - c.numerator), p * c.denominator))
    return hi > lo


def hit_mask_real(beta, ps: np.ndarray, vs: np.ndarray, c: Fraction) -> np.ndarray:
    """Hits for an irrational alpha; an exact proxy settles almost every
    prime and the rest go through exact floor tests."""
    P, Q, err = contfrac.rational_approx(beta, 160)
    P %= Q
    out = np.zeros(len(ps), dtype=bool)
    thr_num, thr_den = c.numerator, c.denominator
    for k, (p, a) in enumerate(zip(ps.tolist(), vs.tolist())):
        D = (p * P - a * Q) % (p * Q)
        dist = min(D, p * Q - D)  # ||alpha' - a/p|| = dist / (p Q)
        # compare dist/(pQ) with c/p, margin err
        lhs = dist * thr_den
        rhs = thr_num * Q
        margin = err * p * Q * thr_den
        if lhs + margin < rhs:
            out[k] = True
        elif lhs - margin > rhs:
            out[k] = False
        else:
            out[k] = _hit_real(beta, p, a, c)
    return out


def count_hits(alpha, seq: NumeratorSequence, X: int, c, table: PrimeTable | None = None) -> int:
    """Exact N_X for alpha (rational or real spec), closed circle distance."""
    c = as_fraction(c)
    _check_c(c)
    if X > seq.limit:
        raise InvalidArgument(f"X={X} exceeds the sequence limit {seq.limit}")
    ps, vs = seq.window(2, X)
    a = _alpha(alpha)
    if isinstance(a, Fraction):
        return int(hit_mask_rational(a, ps, vs, c).sum())
    return int(hit_mask_real(a, ps, vs, c).sum())


def count_hits_naive(alpha, seq: NumeratorSequence, X: int, c) -> int:
    """Reference double loop over primes and integer shifts (slow)."""
    c = as_fraction(c)
    a = _alpha(alpha)
    n = 0
    for p, ap in seq.items():
        if p > X:
            break
        if isinstance(a, Fraction):
            hit = any(abs(a - Fraction(ap, p) - k) <= c / p for k in range(math.floor(a) - 1, math.floor(a) + 2))
        else:
            hit = _hit_real(a, p, ap, c)
        n += hit
    return n


def psi(X: int, c, table: PrimeTable | None = None) -> Fraction:
    """Psi(X) = 2c * sum_{p <= X} 1/p."""
    c = as_fraction(c)
    if X < 2:
        raise InvalidArgument("X must be >= 2")
    table = table_for(X, table)
    return 2 * c * table.mertens_sum(1, X)


def _sample_counts(us: np.ndarray, ps: np.ndarray, vs: np.ndarray, c: Fraction,
                   checkpoints_idx=None) -> np.ndarray:
    """Hit counts for sample points u/2^SAMPLE_BITS (rows) over all primes."""
    S = 1 << SAMPLE_BITS
    thr = (c.numerator * S) // c.denominator
    pS = ps * S
    aS = vs * S
    out = []
    chunk = max(1, 2_000_000 // max(len(ps), 1))
    for k in range(0, len(us), chunk):
        u = us[k : k + chunk, None]
        D = np.mod(ps[None, :] * u - aS[None, :], pS[None, :])
        hit = np.minimum(D, pS[None, :] - D) <= thr
        if checkpoints_idx is None:
            out.append(hit.sum(axis=1))
        else:
            cs = np.cumsum(hit, axis=1)
            out.append(np.stack([cs[:, i - 1] if i > 0 else np.zeros(len(u), np.int64)
                                 for i in checkpoints_idx], axis=1))
    return np.concatenate(out) if out else np.zeros(0, dtype=np.int64)


@dataclass(frozen=True)
class MeanHitsReport:
    X: int
    c: Fraction
    samples: int
    seed: int
    mean: float
    se: float
    psi: Fraction
    z: float

    def to_dict(self) -> dict:
        return {"X": self.X, "c": fmt_q(self.c), "samples": self.samples, "seed": self.seed,
                "mean": self.mean, "se": self.se, "psi": fmt_q(self.psi),
                "psi_float": float(self.psi), "z": self.z}


def sample_points(seed: int, samples: int) -> np.ndarray:
    """Integers u; the k-th sample point is u[k] / 2^38."""
    return rng.dyadic_uniform(rng.stream_key(seed, "alpha"), np.arange(samples), SAMPLE_BITS)


def mc_mean_hits(seq: NumeratorSequence, X: int, c, samples: int, seed: int = 0,
                 threads: int = 1, table: PrimeTable | None = None) -> MeanHitsReport:
    """Mean and standard error of N_X over uniform sample points.

    Points are dyadic u/2^38 drawn from the (seed, "alpha") stream.
    """
    c = as_fraction(c)
    _check_c(c)
    if samples < 2:
        raise InvalidArgument("samples must be >= 2")
    if X > seq.limit:
        raise InvalidArgument(f"X={X} exceeds the sequence limit {seq.limit}")
    if X >= _VEC_LIMIT:
        raise InvalidArgument("mc_mean_hits supports X < 2^24")
    ps, vs = seq.window(2, X)
    us = sample_points(seed, samples)
    blocks = np.array_split(us, max(1, threads))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda b: _sample_counts(b, ps, vs, c), blocks))
    else:
        parts = [_sample_counts(b, ps, vs, c) for b in blocks]
    counts = np.concatenate(parts).astype(np.float64)
    mean = math.fsum(counts.tolist()) / samples
    var = math.fsum(((counts - mean) ** 2).tolist()) / (samples - 1)
    se = math.sqrt(var / samples)
    ps_exp = psi(X, c, table)
    z = (mean - float(ps_exp)) / se if se > 0 else (0.0 if mean == float(ps_exp) else math.inf)
    return MeanHitsReport(X, c, samples, seed, mean, se, ps_exp, z)


@dataclass(frozen=True)
class HitReport:
    alpha: str
    c: Fraction
    rows: tuple  # (X, count, psi, ratio)

    def to_csv(self) -> str:
        lines = ["X,count,psi_num/psi_den,ratio"]
        for X, n, ps, ratio in self.rows:
            lines.append(f"{X},{n},{fmt_q(ps)},{ratio:.12g}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "c": fmt_q(self.c),
            "rows": [{"X": X, "count": n, "psi": fmt_q(ps), "psi_float": float(ps), "ratio": r}
                     for X, n, ps, r in self.rows],
            "note": "ratio = count / (2c log log X); desk-scale log log X is small, "
                    "so ratios are diagnostics, not asymptotic evidence",
        }


def _alpha_label(alpha) -> str:
    a = _alpha(alpha)
    if isinstance(a, Fraction):
        return fmt_q(a)
    return contfrac.format_real(a)


def growth_table(alpha, seq: NumeratorSequence, c, checkpoints, table: PrimeTable | None = None) -> HitReport:
    """Rows (X, N_X, Psi(X), N_X / (2c log log X)) at each checkpoint."""
    c = as_fraction(c)
    _check_c(c)
    checkpoints = list(checkpoints)
    if any(b <= a for a, b in zip(checkpoints, checkpoints[1:])):
        raise InvalidArgument("checkpoints must be increasing")
    if not checkpoints:
        return HitReport(_alpha_label(alpha), c, ())
    Xmax = checkpoints[-1]
    if Xmax > seq.limit:
        raise InvalidArgument(f"X={Xmax} exceeds the sequence limit {seq.limit}")
    ps, vs = seq.window(2, Xmax)
    a = _alpha(alpha)
    mask = hit_mask_rational(a, ps, vs, c) if isinstance(a, Fraction) else hit_mask_real(a, ps, vs, c)
    cum = np.concatenate([[0], np.cumsum(mask)])
    table = table_for(Xmax, table)
    rows = []
    for X in checkpoints:
        n = int(cum[int(np.searchsorted(ps, X, side="right"))])
        ps_exp = psi(X, c, table)
        ll = math.log(math.log(X)) if X > math.e else float("nan")
        rows.append((X, n, ps_exp, n / (2 * float(c) * ll)))
    return HitReport(_alpha_label(alpha), c, tuple(rows))


def growth_counts(us: np.ndarray, seq: NumeratorSequence, c, checkpoints) -> np.ndarray:
    """Counts at each checkpoint for many dyadic sample points at once."""
    c = as_fraction(c)
    ps, vs = seq.window(2, checkpoints[-1])
    idx = [int(np.searchsorted(ps, X, side="right")) for X in checkpoints]
    return _sample_counts(np.asarray(us, dtype=np.int64), ps, vs, c, idx)
