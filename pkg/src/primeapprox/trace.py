"""Averages s_p(x, y) = (1/p) sum_{n<p} e(-n a_p / p) e(x + n y) over the
skew map f(x, y) = (x + y, y) on the 2-torus."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import rng
from .errors import InvalidArgument, OutOfRange
from .exact import as_fraction, fmt_q
from .sequences import NumeratorSequence

DIRECT_CAP = 100_000
LIMIT_EPS = 2.0 ** -40


def _is_exact(v) -> bool:
    return isinstance(v, (int, Fraction)) or (isinstance(v, str) and "." not in v)


def _check(p: int, a: int):
    if p < 2:
        raise InvalidArgument("p must be a prime >= 2")
    if not (0 <= a < p):
        raise InvalidArgument("need 0 <= a_p < p")


def _frac_multiples(y, n: np.ndarray) -> np.ndarray:
    """n * y mod 1 as long doubles; exact residues when y is rational."""
    if _is_exact(y):
        y = as_fraction(y)
        u, v = y.numerator % y.denominator, y.denominator
        if v < 1 << 31 and (len(n) == 0 or int(n[-1]) < 1 << 31):
            r = np.mod(n * u, v)
        else:
            r = np.array([(int(k) * u) % v for k in n.tolist()], dtype=object)
        return np.asarray(r, dtype=np.longdouble) / np.longdouble(v)
    yl = np.longdouble(float(y)) % 1
    return np.mod(n.astype(np.longdouble) * yl, 1)


def _unit(v) -> float:
    return float(as_fraction(v) % 1) if _is_exact(v) else float(v) % 1.0


def s_direct(p: int, a: int, x, y) -> complex:
    """Direct sum, p <= 10^5. Phases are reduced mod 1 before the
    exponential, so the error stays O(p ulp) in long double."""
    _check(p, a)
    if p > DIRECT_CAP:
        raise OutOfRange(f"direct sum is capped at p <= {DIRECT_CAP}")
    n = np.arange(p, dtype=np.int64)
    ph = (_frac_multiples(y, n) - np.mod(n * a, p).astype(np.longdouble) / p + np.longdouble(_unit(x))) % 1
    ang = 2 * np.pi * ph.astype(np.longdouble)
    re = float(np.sum(np.cos(ang)) / p)
    im = float(np.sum(np.sin(ang)) / p)
    return complex(re, im)


def _theta(p: int, a: int, y) -> float:
    """y - a/p reduced to [-1/2, 1/2)."""
    if _is_exact(y):
        t = (as_fraction(y) - Fraction(a, p)) % 1
        return float(t - 1 if t >= Fraction(1, 2) else t)
    t = (float(y) - a / p) % 1.0
    return t - 1.0 if t >= 0.5 else t


def kernel_ratio(p: int, theta: float) -> float:
    """sin(pi p theta) / (p sin(pi theta)), with the limit 1 near theta = 0."""
    if abs(theta) < LIMIT_EPS:
        return 1.0
    return math.sin(math.pi * p * theta) / (p * math.sin(math.pi * theta))


def s_closed(p: int, a: int, x, y) -> complex:
    """e(x) * kernel(theta) * e((p - 1) theta / 2), theta = y - a/p."""
    _check(p, a)
    th = _theta(p, a, y)
    k = kernel_ratio(p, th)
    ang = 2 * math.pi * (_unit(x) + (p - 1) * th / 2)
    return complex(k * math.cos(ang), k * math.sin(ang))


def abs_s(p: int, a: int, y) -> float:
    """|s_p|, independent of x; exactly 1.0 on the limit branch."""
    _check(p, a)
    return abs(kernel_ratio(p, _theta(p, a, y)))


@dataclass(frozen=True)
class TraceAverage:
    p: int
    a_p: int
    x: object
    y: object
    value: complex

    @property
    def modulus(self) -> float:
        return abs(self.value)


def trace_average(p: int, a: int, x, y, method: str = "closed") -> TraceAverage:
    if method == "closed":
        v = s_closed(p, a, x, y)
    elif method == "direct":
        v = s_direct(p, a, x, y)
    else:
        raise InvalidArgument("method is 'closed' or 'direct'")
    return TraceAverage(p, a, x, y, v)


def _scan_moduli(ps: np.ndarray, vs: np.ndarray, y) -> tuple:
    """(theta, |s|, p ||theta||) per prime, theta reduced exactly for rational y."""
    if _is_exact(y):
        y = as_fraction(y)
        u, v = y.numerator % y.denominator, y.denominator
        if int(ps.max()) * v >= 1 << 62:
            raise InvalidArgument("denominator of y too large for the scan")
        pv = ps * v
        r = np.mod(ps * u - vs * v, pv)
        r = np.where(2 * r >= pv, r - pv, r)  # theta = r / (p v) in [-1/2, 1/2)
        theta = r / pv.astype(np.float64)
        pt = np.abs(r) / float(v)  # p ||theta||
        num = np.abs(np.sin(np.pi * (np.mod(r, v) / float(v))))
    else:
        t = np.mod(float(y) - vs / ps.astype(np.float64), 1.0)
        theta = np.where(t >= 0.5, t - 1.0, t)
        pt = ps * np.abs(theta)
        num = np.abs(np.sin(np.pi * pt))
    den = ps * np.abs(np.sin(np.pi * theta))
    small = np.abs(theta) < LIMIT_EPS
    mod = np.where(small, 1.0, num / np.where(small, 1.0, den))
    return theta, np.minimum(mod, 1.0), pt


def kappa(threshold: float) -> float:
    """|s_p| <= 1 / (2 p ||theta||), so |s_p| >= t forces p ||theta|| <= 1 / (2 t)."""
    return 1.0 / (2.0 * threshold)


@dataclass(frozen=True)
class DivergenceScan:
    y: str
    X: int
    threshold: float
    primes: tuple
    kappa: float
    kappa_primes: tuple
    rows: tuple  # (p, theta, |s|) for the reported primes

    @property
    def consistent(self) -> bool:
        return set(self.primes) <= set(self.kappa_primes)

    def to_csv(self) -> str:
        lines = ["p,theta,abs_s"]
        lines += [f"{p},{th:.17g},{m:.17g}" for p, th, m in self.rows]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"y": self.y, "X": self.X, "threshold": self.threshold, "primes": list(self.primes),
                "kappa": self.kappa, "kappa_primes": list(self.kappa_primes),
                "consistent": self.consistent}


def divergence_scan(seq: NumeratorSequence, y, X: int, threshold: float) -> DivergenceScan:
    """Primes p <= X with |s_p(., y)| >= threshold, plus the primes with
    p ||y - a_p/p|| <= kappa(threshold) for comparison."""
    if not (0 < threshold < 1):
        raise InvalidArgument("threshold must lie in (0, 1)")
    if X > seq.limit:
        raise InvalidArgument(f"X={X} exceeds the sequence limit {seq.limit}")
    ps, vs = seq.window(2, X)
    label = fmt_q(y) if _is_exact(y) else repr(float(y))
    if len(ps) == 0:
        return DivergenceScan(label, X, threshold, (), kappa(threshold), (), ())
    theta, mod, pt = _scan_moduli(ps, vs, y)
    hit = mod >= threshold
    kap = kappa(threshold)
    near = pt <= kap * (1 + 1e-12)
    rows = tuple((int(p), float(t), float(m)) for p, t, m in zip(ps[hit], theta[hit], mod[hit]))
    return DivergenceScan(label, X, threshold, tuple(ps[hit].tolist()), kap,
                          tuple(ps[near].tolist()), rows)


def sample_y(seed: int, count: int) -> list:
    """Dyadic sample points u / 2^38 on the (seed, "y") stream."""
    us = rng.dyadic_uniform(rng.stream_key(seed, "y"), np.arange(count), 38)
    return [Fraction(int(u), 1 << 38) for u in us]
