"""Prime tables: segmented sieve, rank lookup, Mertens sums, shifted primes."""

from __future__ import annotations

import functools
import math
import os
from fractions import Fraction
from math import isqrt

import numpy as np

from .errors import InvalidArgument, OutOfRange
from .exact import coprime_fraction, reciprocal_sum

DEFAULT_LIMIT = 6_000_000
ENV_LIMIT = "PRIMEAPPROX_SIEVE_LIMIT"
SEGMENT = 1 << 18  # odd entries per segment


def default_limit() -> int:
    raw = os.environ.get(ENV_LIMIT)
    if raw is None or raw.strip() == "":
        return DEFAULT_LIMIT
    try:
        val = int(raw)
    except ValueError:
        raise InvalidArgument(f"{ENV_LIMIT} must be an integer, got {raw!r}")
    if val < 2:
        raise InvalidArgument(f"{ENV_LIMIT} must be >= 2")
    return val


def _simple_sieve(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, isqrt(n) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    return np.flatnonzero(flags).astype(np.int64)


def _segmented_sieve(limit: int) -> np.ndarray:
    base = _simple_sieve(isqrt(limit))[1:].tolist()  # odd base primes
    n_odd = (limit + 1) // 2  # odd numbers 1, 3, ..., <= limit; index j <-> 2j+1
    chunks = [np.array([2], dtype=np.int64)] if limit >= 2 else []
    seg = np.empty(SEGMENT, dtype=bool)
    for lo in range(0, n_odd, SEGMENT):
        hi = min(lo + SEGMENT, n_odd)
        flags = seg[: hi - lo]
        flags[:] = True
        if lo == 0:
            flags[0] = False  # 1 is not prime
        start_val = 2 * lo + 1
        end_val = 2 * hi - 1
        for p in base:
            p2 = p * p
            if p2 > end_val:
                break
            first = max(p2, ((start_val + p - 1) // p) * p)
            if first % 2 == 0:
                first += p
            flags[(first - start_val) // 2 :: p] = False
        idx = np.flatnonzero(flags)
        chunks.append(2 * (idx + lo).astype(np.int64) + 1)
    return np.concatenate(chunks)


class PrimeTable:
    """Immutable table of all primes <= limit with 1-based ranks."""

    def __init__(self, limit: int):
        if not isinstance(limit, (int, np.integer)) or limit < 2:
            raise InvalidArgument("sieve limit must be an integer >= 2")
        self.limit = int(limit)
        primes = _segmented_sieve(self.limit)
        primes.setflags(write=False)
        self.primes = primes

    def __len__(self):
        return len(self.primes)

    def __repr__(self):
        return f"PrimeTable(limit={self.limit}, count={len(self.primes)})"

    def _check(self, x: int):
        if x > self.limit:
            raise OutOfRange(f"{x} exceeds sieve limit {self.limit}")

    def is_prime(self, n: int) -> bool:
        self._check(n)
        k = int(np.searchsorted(self.primes, n))
        return k < len(self.primes) and int(self.primes[k]) == n

    def index_of(self, p: int) -> int:
        """1-based rank n_p of the prime p."""
        self._check(p)
        k = int(np.searchsorted(self.primes, p))
        if k == len(self.primes) or int(self.primes[k]) != p:
            raise InvalidArgument(f"{p} is not prime")
        return k + 1

    def nth(self, n: int) -> int:
        if n < 1:
            raise InvalidArgument("ranks start at 1")
        if n > len(self.primes):
            raise OutOfRange(f"the {n}-th prime exceeds sieve limit {self.limit}")
        return int(self.primes[n - 1])

    def pi(self, x: int) -> int:
        self._check(x)
        return int(np.searchsorted(self.primes, x, side="right"))

    def next_prime(self, n: int) -> int:
        """Smallest prime strictly greater than n."""
        k = int(np.searchsorted(self.primes, n, side="right"))
        if k == len(self.primes):
            raise OutOfRange(f"no prime above {n} within sieve limit {self.limit}")
        return int(self.primes[k])

    def primes_in(self, lo: int, hi: int) -> np.ndarray:
        """Primes p with lo <= p <= hi (read-only view)."""
        self._check(hi)
        a = int(np.searchsorted(self.primes, lo, side="left"))
        b = int(np.searchsorted(self.primes, hi, side="right"))
        return self.primes[a:b]

    def mertens_sum(self, X: int, Y: int) -> Fraction:
        """Exact sum of 1/p over X < p <= Y."""
        if X >= Y:
            raise InvalidArgument("mertens_sum needs X < Y")
        if X < 1:
            raise InvalidArgument("mertens_sum needs X >= 1")
        self._check(Y)
        ps = self.primes_in(X + 1, Y)
        num, den = reciprocal_sum(ps.tolist())
        # den is a product of distinct primes and no p divides num, so the
        # pair is already reduced
        return coprime_fraction(num, den)

    def mertens_float(self, X: int, Y: int) -> float:
        self._check(Y)
        ps = self.primes_in(X + 1, Y).astype(np.float64)
        return math.fsum((1.0 / ps).tolist())

    def shifted_prime_count(self, x: int, h: int) -> int:
        if x < 2:
            raise InvalidArgument("x must be >= 2")
        if h < 1 or h > x * x:
            raise InvalidArgument("need 1 <= h <= x^2")
        self._check(x + h)
        ps = self.primes_in(2, x)
        shifted = ps + h
        k = np.searchsorted(self.primes, shifted)
        k = np.minimum(k, len(self.primes) - 1)
        return int(np.count_nonzero(self.primes[k] == shifted))


def euler_phi(n: int) -> int:
    if n < 1:
        raise InvalidArgument("phi needs n >= 1")
    result, m, d = n, n, 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


def shifted_prime_reference(x: int, h: int) -> float:
    """(h / phi(h)) * x / (log x)^2, the shape of the upper bound."""
    return h / euler_phi(h) * x / math.log(x) ** 2


@functools.lru_cache(maxsize=8)
def build_table(limit: int) -> PrimeTable:
    return PrimeTable(limit)


def get_table(limit: int | None = None) -> PrimeTable:
    """Cached table; ``None`` means the configured default limit."""
    return build_table(default_limit() if limit is None else int(limit))


def table_for(n: int, table: PrimeTable | None = None) -> PrimeTable:
    """``table`` if given, else the default table, grown if n exceeds it."""
    if table is not None:
        return table
    base = get_table()
    return base if n <= base.limit else build_table(int(n))


def mertens_sum(X: int, Y: int, table: PrimeTable | None = None) -> Fraction:
    table = table or get_table()
    return table.mertens_sum(X, Y)


def shifted_prime_count(x: int, h: int, table: PrimeTable | None = None) -> int:
    table = table or get_table()
    return table.shifted_prime_count(x, h)
