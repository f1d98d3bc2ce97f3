"""Exact real numbers by continued fractions.

Four kinds of real are supported: rationals, quadratic surds (a + b*sqrt(d))/c,
explicit continued fractions (finite known prefix, optionally periodic) and
the Liouville-type numbers with a_1 = 3, a_{k+1} = ceil(exp(q_k)).

Surds and periodic expansions are decided exactly with integer square
roots. Numbers known only through a prefix of partial quotients are bracketed
between two convergent-type fractions; a floor is returned only when the
bracket settles it, otherwise PrecisionExhausted is raised.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, Union

import mpmath
import numpy as np

from . import rng
from .errors import InvalidArgument, OutOfRange, PrecisionExhausted
from .exact import as_fraction, ceil_div, fmt_q, int_str

LIOUVILLE_MAX_DEPTH = 3
_LOG2E = 1.4426950408889634


# ---------------------------------------------------------------- real specs


@dataclass(frozen=True)
class Rational:
    num: int
    den: int = 1

    def __post_init__(self):
        if self.den == 0:
            raise InvalidArgument("zero denominator")
        g = gcd(self.num, self.den)
        sign = -1 if self.den < 0 else 1
        object.__setattr__(self, "num", sign * self.num // g)
        object.__setattr__(self, "den", sign * self.den // g)

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.den)


@dataclass(frozen=True)
class QuadraticSurd:
    """(a + b*sqrt(d)) / c with d >= 2 not a square, b != 0, c != 0."""

    a: int
    b: int
    d: int
    c: int

    def __post_init__(self):
        if self.c == 0:
            raise InvalidArgument("surd denominator c must be nonzero")
        if self.b == 0:
            raise InvalidArgument("surd coefficient b must be nonzero")
        if self.d < 2 or isqrt(self.d) ** 2 == self.d:
            raise InvalidArgument(f"d={self.d} must be a non-square >= 2")
        a, b, c = self.a, self.b, self.c
        if c < 0:
            a, b, c = -a, -b, -c
        g = gcd(gcd(a, b), c)
        object.__setattr__(self, "a", a // g)
        object.__setattr__(self, "b", b // g)
        object.__setattr__(self, "c", c // g)


@dataclass(frozen=True)
class ExplicitCF:
    """[a0; terms..., (period)...]; without a period only the prefix is known."""

    a0: int
    terms: tuple = ()
    period: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(int(t) for t in self.terms))
        object.__setattr__(self, "period", tuple(int(t) for t in self.period))
        if self.a0 < 0:
            raise InvalidArgument("integer part a0 must be >= 0")
        if any(t < 1 for t in self.terms + self.period):
            raise InvalidArgument("partial quotients after a0 must be >= 1")


@dataclass(frozen=True)
class LiouvilleCF:
    """[0; a_1, a_2, ...] with a_1 = 3 and a_{k+1} = ceil(exp(q_k)).

    ``depth`` partial quotients are materialised; the number itself is the
    infinite one, so the rule still gives a lower bound for a_{depth+1}.
    """

    depth: int
    rule: str = "ceil-exp"

    def __post_init__(self):
        if self.rule != "ceil-exp":
            raise InvalidArgument(f"unknown Liouville rule {self.rule!r}")
        if self.depth < 1 or self.depth > 4:
            raise InvalidArgument("Liouville depth must be in 1..4")
        if self.depth > LIOUVILLE_MAX_DEPTH:
            raise OutOfRange(
                "a_4 = ceil(exp(q_3)) has about 1.7e29 decimal digits; "
                f"depth is capped at {LIOUVILLE_MAX_DEPTH}"
            )


RealSpec = Union[Rational, QuadraticSurd, ExplicitCF, LiouvilleCF]

GOLDEN = QuadraticSurd(1, 1, 5, 2)


def sqrt_spec(d: int) -> QuadraticSurd:
    return QuadraticSurd(0, 1, d, 1)


def as_real(x) -> RealSpec:
    if isinstance(x, (Rational, QuadraticSurd, ExplicitCF, LiouvilleCF)):
        return x
    if isinstance(x, str):
        return parse_real(x)
    q = as_fraction(x)
    return Rational(q.numerator, q.denominator)


# ------------------------------------------------------------------- grammar

_INT = r"[+-]?\d+"


def parse_real(text: str) -> RealSpec:
    """Parse ``rat:P/Q``, ``sqrt:D``, ``surd:a,b,d,c``, ``golden``,
    ``cf:a0;a1,a2,(p1,p2)`` or ``liouville:depth``."""
    s = text.strip()
    if s == "golden":
        return GOLDEN
    kind, sep, body = s.partition(":")
    if not sep:
        raise InvalidArgument(f"bad real spec {text!r}")
    try:
        if kind == "rat":
            q = as_fraction(body)
            return Rational(q.numerator, q.denominator)
        if kind == "sqrt":
            if not re.fullmatch(r"\d+", body.strip()):
                raise ValueError
            return sqrt_spec(int(body))
        if kind == "surd":
            parts = [p.strip() for p in body.split(",")]
            if len(parts) != 4 or not all(re.fullmatch(_INT, p) for p in parts):
                raise ValueError
            return QuadraticSurd(*map(int, parts))
        if kind == "liouville":
            if not re.fullmatch(r"\d+", body.strip()):
                raise ValueError
            return LiouvilleCF(int(body))
        if kind == "cf":
            return _parse_cf(body)
    except (ValueError, TypeError):
        pass
    raise InvalidArgument(f"bad real spec {text!r}")


def _parse_cf(body: str) -> ExplicitCF:
    head, sep, tail = body.partition(";")
    if not re.fullmatch(r"\s*\d+\s*", head):
        raise ValueError
    a0 = int(head)
    terms: list = []
    period: list = []
    tail = tail.strip()
    if sep and tail:
        m = re.fullmatch(r"([\d,\s]*?)\s*(?:,?\s*\(([\d,\s]+)\))?\s*", tail)
        if not m:
            raise ValueError
        if m.group(1).strip():
            terms = [int(t) for t in m.group(1).split(",") if t.strip()]
        if m.group(2):
            period = [int(t) for t in m.group(2).split(",") if t.strip()]
    return ExplicitCF(a0, tuple(terms), tuple(period))


def format_real(beta: RealSpec) -> str:
    if isinstance(beta, Rational):
        return f"rat:{int_str(beta.num)}/{int_str(beta.den)}"
    if isinstance(beta, QuadraticSurd):
        if beta == GOLDEN:
            return "golden"
        if (beta.a, beta.b, beta.c) == (0, 1, 1):
            return f"sqrt:{beta.d}"
        return f"surd:{beta.a},{beta.b},{beta.d},{beta.c}"
    if isinstance(beta, ExplicitCF):
        items = [str(t) for t in beta.terms]
        if beta.period:
            items.append("(" + ",".join(map(str, beta.period)) + ")")
        return f"cf:{beta.a0};" + ",".join(items)
    if isinstance(beta, LiouvilleCF):
        return f"liouville:{beta.depth}"
    raise InvalidArgument(f"not a real spec: {beta!r}")


# ------------------------------------------------------- partial quotients


def _convergents_of(quotients) -> list:
    out = []
    p0, p1, q0, q1 = 0, 1, 1, 0  # (p_{-2}, p_{-1}), (q_{-2}, q_{-1})
    for a in quotients:
        p0, p1 = p1, a * p1 + p0
        q0, q1 = q1, a * q1 + q0
        out.append((a, p1, q1))
    return out


def _surd_pqd(s: QuadraticSurd) -> tuple:
    """(P, Q, D) with value (P + sqrt(D))/Q and Q | D - P^2."""
    D = s.b * s.b * s.d
    P, Q = (s.a, s.c) if s.b > 0 else (-s.a, -s.c)
    if (D - P * P) % Q:
        P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
    return P, Q, D


def _surd_quotients(s: QuadraticSurd) -> Iterator[int]:
    P, Q, D = _surd_pqd(s)
    r = isqrt(D)
    while True:
        a = (P + r) // Q if Q > 0 else -((P + r) // -Q) - 1
        yield a
        P = a * Q - P
        Q = (D - P * P) // Q


@functools.lru_cache(maxsize=256)
def periodic_to_surd(cf: ExplicitCF) -> QuadraticSurd:
    """Closed form of a periodic continued fraction."""
    if not cf.period:
        raise InvalidArgument("continued fraction has no periodic tail")
    conv = _convergents_of(cf.period)
    Pm, Qm = conv[-1][1], conv[-1][2]
    Pm1, Qm1 = (conv[-2][1], conv[-2][2]) if len(conv) > 1 else (1, 0)
    # y = [period; y] solves Qm y^2 + (Qm1 - Pm) y - Pm1 = 0, y > 1
    u, D, v = Pm - Qm1, (Pm - Qm1) ** 2 + 4 * Qm * Pm1, 2 * Qm
    head = _convergents_of((cf.a0,) + cf.terms)
    pn, qn = head[-1][1], head[-1][2]
    pn1, qn1 = (head[-2][1], head[-2][2]) if len(head) > 1 else (1, 0)
    A, Bc = pn * u + pn1 * v, pn
    C, E = qn * u + qn1 * v, qn
    num_a, num_b, den = A * C - Bc * E * D, Bc * C - A * E, C * C - E * E * D
    # pull square factors out of D to keep numbers small
    f = 2
    while f * f <= D and f < 10_000:
        while D % (f * f) == 0:
            D //= f * f
            num_b *= f
        f += 1
    return QuadraticSurd(num_a, num_b, D, den)


def _exact_surd(beta) -> QuadraticSurd | None:
    if isinstance(beta, QuadraticSurd):
        return beta
    if isinstance(beta, ExplicitCF) and beta.period:
        return periodic_to_surd(beta)
    return None


@functools.lru_cache(maxsize=None)
def _ceil_exp(q: int) -> int:
    dps = int(q * 0.4343) + 40
    with mpmath.workdps(dps):
        v = mpmath.exp(q)
        f = int(mpmath.floor(v))
        if v - f < mpmath.mpf(10) ** -20:
            raise PrecisionExhausted(f"cannot separate exp({q}) from an integer")
    return f + 1


@functools.lru_cache(maxsize=None)
def liouville_quotients(depth: int) -> tuple:
    """(a_0, a_1, ..., a_depth) for the Liouville construction."""
    qs = [0, 3]
    q_prev, q = 1, 3
    for _ in range(depth - 1):
        a = _ceil_exp(q)
        qs.append(a)
        q_prev, q = q, a * q + q_prev
    return tuple(qs[: depth + 1])


def _quotient_iter(beta) -> tuple:
    """(iterator, kind): kind is 'infinite', 'terminates' or 'prefix'."""
    if isinstance(beta, Rational):

        def euclid(n=beta.num, d=beta.den):
            while d:
                a = n // d
                yield a
                n, d = d, n - a * d

        return euclid(), "terminates"
    surd = _exact_surd(beta)
    if surd is not None and not isinstance(beta, ExplicitCF):
        return _surd_quotients(surd), "infinite"
    if isinstance(beta, ExplicitCF):

        def explicit(cf=beta):
            yield cf.a0
            yield from cf.terms
            while cf.period:
                yield from cf.period

        return explicit(), ("infinite" if beta.period else "prefix")
    if isinstance(beta, LiouvilleCF):
        return iter(liouville_quotients(beta.depth)), "prefix"
    raise InvalidArgument(f"not a real spec: {beta!r}")


def quotients(beta: RealSpec, k: int) -> tuple:
    """Up to k partial quotients (a_0 first) and the reason for stopping."""
    it, kind = _quotient_iter(as_real(beta))
    out = []
    for a in it:
        if len(out) >= k:
            break
        out.append(a)
    reason = None
    if len(out) < k:
        reason = "terminated" if kind == "terminates" else "unknown"
    return out, reason


def _next_lower_bound(beta, n_known: int, bits: int) -> int:
    """Lower bound for the partial quotient after the known prefix."""
    if isinstance(beta, LiouvilleCF):
        quots = liouville_quotients(beta.depth)
        q = _convergents_of(quots)[-1][2]
        # a_next = ceil(exp(q)) >= exp(q) > 2^(floor(q*log2 e) - 1)
        m = int(q * _LOG2E) - 1
        return 1 << max(0, min(m, bits))
    return 1


# -------------------------------------------------------------- convergents


@dataclass(frozen=True)
class ConvergentList:
    entries: tuple
    short: bool = False
    reason: str | None = None

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def __iter__(self):
        return iter(self.entries)

    @property
    def quotients(self) -> list:
        return [e[0] for e in self.entries]

    @property
    def p(self) -> list:
        return [e[1] for e in self.entries]

    @property
    def q(self) -> list:
        return [e[2] for e in self.entries]


def expand(beta, k: int) -> ConvergentList:
    """First k partial quotients a_0..a_{k-1} with their convergents."""
    if k < 1:
        raise InvalidArgument("expand needs k >= 1")
    quots, reason = quotients(beta, k)
    entries = tuple(_convergents_of(quots))
    return ConvergentList(entries, short=len(entries) < k, reason=reason)


def frac_part(beta) -> RealSpec:
    """beta reduced mod 1."""
    beta = as_real(beta)
    if isinstance(beta, Rational):
        return Rational(beta.num % beta.den, beta.den)
    if isinstance(beta, QuadraticSurd):
        f = floor_mul(beta, 1)
        return QuadraticSurd(beta.a - f * beta.c, beta.b, beta.d, beta.c)
    if isinstance(beta, ExplicitCF):
        return ExplicitCF(0, beta.terms, beta.period)
    return beta


def is_rational(beta) -> bool:
    return isinstance(as_real(beta), Rational)


# ------------------------------------------------------------------ brackets


def bracket(beta, bits: int = 64) -> tuple:
    """(lo, hi) with lo < beta < hi and hi - lo <= 2^-bits, or lo = hi = beta
    for rationals. Prefix-only reals raise PrecisionExhausted when their
    known quotients cannot reach the requested width."""
    beta = as_real(beta)
    if isinstance(beta, Rational):
        v = beta.value
        return v, v
    it, kind = _quotient_iter(beta)
    target = 1 << bits
    p0, p1, q0, q1 = 0, 1, 1, 0
    n = 0
    for a in it:
        p0, p1 = p1, a * p1 + p0
        q0, q1 = q1, a * q1 + q0
        n += 1
        if kind == "infinite" and n >= 2 and q0 * q1 >= target:
            lo, hi = Fraction(p0, q0), Fraction(p1, q1)
            return (lo, hi) if lo < hi else (hi, lo)
    # prefix exhausted: beta = (x p1 + p0)/(x q1 + q0) with x > L
    L = _next_lower_bound(beta, n, bits + 2)
    lo, hi = Fraction(p1, q1), Fraction(L * p1 + p0, L * q1 + q0)
    if lo > hi:
        lo, hi = hi, lo
    if (hi - lo) * target > 1:
        raise PrecisionExhausted(
            f"{format_real(beta)}: {n} known quotients give width "
            f"~2^{math.log2(float(hi - lo)):.1f}, need 2^-{bits}; "
            f"convergent depth > {n - 1} required",
            depth=n,
        )
    return lo, hi


def rational_approx(beta, bits: int = 128) -> tuple:
    """(P, Q, err) with |beta - P/Q| <= err, err <= 2^-bits (err = 0 if exact)."""
    lo, hi = bracket(beta, bits)
    return lo.numerator, lo.denominator, hi - lo


# ---------------------------------------------------------------- exact floors


def _surd_floor_affine(s: QuadraticSurd, m: int, t: Fraction) -> int:
    u, v = t.numerator, t.denominator
    A = v * m * s.a + u * s.c
    Bq = v * m * s.b
    C = s.c * v
    if Bq == 0:
        return A // C
    r = isqrt(Bq * Bq * s.d)
    fb = r if Bq > 0 else -r - 1
    return (A + fb) // C


def floor_affine(beta, m: int, t=0) -> int:
    """floor(m*beta + t) for integer m and rational t, exactly."""
    beta = as_real(beta)
    t = as_fraction(t)
    m = int(m)
    if isinstance(beta, Rational):
        return math.floor(m * beta.value + t)
    surd = _exact_surd(beta)
    if surd is not None:
        return _surd_floor_affine(surd, m, t)
    if m == 0:
        return math.floor(t)
    bits = 64 + abs(m).bit_length()
    while True:
        try:
            lo, hi = bracket(beta, bits)
        except PrecisionExhausted as exc:
            # report the best we could do
            lo, hi = _best_bracket(beta)
            x, y = sorted((m * lo + t, m * hi + t))
            if math.floor(x) == ceil_div(y.numerator, y.denominator) - 1:
                return math.floor(x)
            raise PrecisionExhausted(
                f"floor({m}*{format_real(beta)}) is not settled by the known "
                f"partial quotients; need convergent depth > {exc.depth}",
                depth=exc.depth,
            ) from None
        x, y = sorted((m * lo + t, m * hi + t))
        fx = math.floor(x)
        if fx == ceil_div(y.numerator, y.denominator) - 1:
            return fx
        bits *= 2
        if bits > 1 << 20:
            raise PrecisionExhausted(f"floor({m}*beta) unresolved at 2^20 bits")


def _best_bracket(beta) -> tuple:
    it, _ = _quotient_iter(beta)
    quots = list(it)
    conv = _convergents_of(quots)
    p1, q1 = conv[-1][1], conv[-1][2]
    p0, q0 = (conv[-2][1], conv[-2][2]) if len(conv) > 1 else (1, 0)
    L = _next_lower_bound(beta, len(quots), 4096)
    lo, hi = Fraction(p1, q1), Fraction(L * p1 + p0, L * q1 + q0)
    return (lo, hi) if lo < hi else (hi, lo)


def floor_mul(beta, m: int) -> int:
    """floor(m * beta), exact."""
    return floor_affine(beta, m, 0)


def ceil_affine(beta, m: int, t=0) -> int:
    t = as_fraction(t)
    return -floor_affine(beta, -m, -t)


def dist_le(beta, n: int, r) -> bool:
    """Exact test of ||n*beta|| <= r."""
    beta = as_real(beta)
    r = as_fraction(r)
    if r < 0:
        return False
    if r >= Fraction(1, 2):
        return True
    if isinstance(beta, Rational):
        x = (n * beta.value) % 1
        return min(x, 1 - x) <= r
    if n == 0:
        return True
    f = floor_mul(beta, n)
    # frac <= r  or  frac >= 1 - r; equalities are impossible for irrational n*beta
    return floor_affine(beta, n, -r) < f or floor_affine(beta, n, r - 1) >= f


def norm_bounds(beta, n: int, bits: int = 96) -> tuple:
    """Enclosure (lo, hi) of ||n*beta||."""
    beta = as_real(beta)
    if isinstance(beta, Rational):
        x = (n * beta.value) % 1
        d = min(x, 1 - x)
        return d, d
    lo, hi = bracket(beta, bits + abs(n).bit_length())
    a, b = n * lo, n * hi
    if a > b:
        a, b = b, a
    f = floor_mul(beta, n)
    a, b = a - f, b - f  # fractional part enclosure inside (0, 1)
    a, b = max(a, Fraction(0)), min(b, Fraction(1))
    if b <= Fraction(1, 2):
        return a, b
    if a >= Fraction(1, 2):
        return 1 - b, 1 - a
    return min(a, 1 - b), Fraction(1, 2)


def norm_float(beta, n: int) -> float:
    lo, hi = norm_bounds(beta, n)
    return float((lo + hi) / 2)


def sign_affine(beta, m: int, t=0) -> int:
    beta = as_real(beta)
    t = as_fraction(t)
    if isinstance(beta, Rational):
        v = m * beta.value + t
        return (v > 0) - (v < 0)
    if m == 0:
        return (t > 0) - (t < 0)
    return 1 if floor_affine(beta, m, t) >= 0 else -1


# ------------------------------------------------------------- diagnostics


def frac_quotients(beta, K: int) -> tuple:
    """Partial quotients a_1..a_K of beta mod 1 (fewer if they run out)."""
    quots, reason = quotients(frac_part(beta), K + 1)
    return quots[1:], reason


def frac_convergents(beta, K: int) -> ConvergentList:
    """Convergents of beta mod 1, index 0 = (0, 0, 1)."""
    return expand(frac_part(beta), K + 1)


def badly_range_max(beta, U: int, V: int, extra: int = 200) -> int:
    """max a_{t..t+r} where q_t <= 2^U < q_{t+1} and q_{t+r-1} < 2^V <= q_{t+r}.

    Convergents are those of beta mod 1.
    """
    if U >= V:
        raise InvalidArgument("badly approximable range needs U < V")
    need = 1 << max(V, 0)
    conv = []
    k = 8
    while True:
        cl = frac_convergents(beta, k)
        conv = list(cl.entries)
        if conv[-1][2] >= need or cl.short:
            break
        k *= 2
    if conv[-1][2] < need:
        raise PrecisionExhausted(
            f"quotients of {format_real(as_real(beta))} run out before q >= 2^{V}",
            depth=len(conv),
        )
    lowU = Fraction(2) ** U
    t = 0
    for idx, (_, _, q) in enumerate(conv):
        if q <= lowU:
            t = idx
    end = next(idx for idx, (_, _, q) in enumerate(conv) if q >= need)
    end = max(end, t)
    return max(conv[j][0] for j in range(t, end + 1))


def is_badly_range(beta, B: int, U: int, V: int) -> bool:
    return badly_range_max(beta, U, V) <= B


@dataclass(frozen=True)
class IbaCertificate:
    B: int
    delta: Fraction
    windows: tuple = ()
    kmax: int = 0


def _log_at_most(T: int, delta: Fraction, q: int) -> bool:
    """Exact decision of delta * log(q) <= T."""
    if q <= 1:
        return T >= 0
    for dps in (50, 200, 1000):
        with mpmath.workdps(dps):
            diff = mpmath.mpf(T) - mpmath.mpf(delta.numerator) / delta.denominator * mpmath.log(q)
            if abs(diff) > mpmath.mpf(10) ** (-(dps // 2)):
                return diff > 0
    raise PrecisionExhausted("i.b.a. log comparison undecided")


def iba_certify(beta, B: int, delta, kmax: int) -> IbaCertificate:
    """Maximal runs of quotients <= B among a_1..a_kmax that are long enough.

    Each run [j, j+T] with T >= delta * log q_j (natural log) is a window.
    """
    delta = as_fraction(delta)
    if B < 1 or not (0 < delta < 1) or kmax < 1:
        raise InvalidArgument("need B >= 1, 0 < delta < 1, kmax >= 1")
    conv = frac_convergents(beta, kmax)
    entries = conv.entries
    windows = []
    j = 1
    while j < len(entries):
        if entries[j][0] > B:
            j += 1
            continue
        e = j
        while e + 1 < len(entries) and entries[e + 1][0] <= B:
            e += 1
        T = e - j
        if _log_at_most(T, delta, entries[j][2]):
            windows.append((j, T))
        j = e + 1
    return IbaCertificate(B, delta, tuple(windows), len(entries) - 1)


def fuchs_kim_partial(beta, K: int) -> float:
    """Sum over blocks q_k <= n < q_{k+1} <= K of min(psi(n), ||q_k beta||)."""
    if K < 2:
        raise InvalidArgument("K must be >= 2")
    beta = frac_part(beta)
    if isinstance(beta, Rational):
        raise InvalidArgument("beta must be irrational")
    total = []
    k = 0
    conv = frac_convergents(beta, 16)
    while True:
        if k + 1 >= len(conv.entries):
            if conv.short:
                if conv.entries[-1][2] <= K:
                    raise PrecisionExhausted(
                        "known quotients end before q_{k+1} > K", depth=len(conv)
                    )
                break
            conv = frac_convergents(beta, 2 * len(conv.entries))
            continue
        qk, qk1 = conv.entries[k][2], conv.entries[k + 1][2]
        if qk1 > K:
            break
        if qk1 > qk:
            d = norm_float(beta, qk)
            n = np.arange(qk, qk1, dtype=np.float64)
            with np.errstate(divide="ignore"):
                psi = np.where(n > 1, 1.0 / (n * np.log(n)), 1.0)
            total.append(math.fsum(np.minimum(psi, d).tolist()))
        k += 1
    return math.fsum(total)


def dv_statistic(beta, K: int) -> tuple:
    """(sum of a_1..a_K minus their max, K log K / log 2)."""
    if K < 1:
        raise InvalidArgument("K must be >= 1")
    qs, reason = frac_quotients(beta, K)
    if len(qs) < K and reason == "unknown":
        raise PrecisionExhausted(f"only {len(qs)} partial quotients known", depth=len(qs))
    if not qs:
        return 0, K * math.log(K) / math.log(2)
    return sum(qs) - max(qs), K * math.log(K) / math.log(2)


@dataclass(frozen=True)
class KappaEstimate:
    """Finite-scale lower estimates of the Diophantine exponent.

    The k-th convergent satisfies |beta - p_k/q_k| < 1/(q_k q_{k+1}), so it
    witnesses the exponent tau_k = log q_{k+1} / log q_k.
    """

    taus: tuple
    estimate: float


def kappa_lower_estimate(beta, kmax: int) -> KappaEstimate:
    conv = frac_convergents(beta, kmax + 1)
    q = [e[2] for e in conv.entries]
    taus = []
    for k in range(1, len(q) - 1):
        if q[k] >= 2:
            taus.append((k, math.log(q[k + 1]) / math.log(q[k])))
    if not taus:
        return KappaEstimate((), float("nan"))
    tail = taus[len(taus) // 2 :]
    return KappaEstimate(tuple(taus), max(t for _, t in tail))


def gauss_quotients(K: int, seed: int = 0) -> np.ndarray:
    """K partial quotients drawn from the Gauss-Kuzmin law (iid diagnostic)."""
    u = rng.unit_floats(rng.stream_key(seed, "gauss"), np.arange(K))
    x = np.exp2(u) - 1.0  # Gauss measure CDF is log2(1 + x)
    x = np.maximum(x, 1e-300)
    return np.floor(1.0 / x).astype(np.int64)
