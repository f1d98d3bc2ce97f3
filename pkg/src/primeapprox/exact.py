"""Exact rational helpers shared by the measure and reporting code.

Big sums are done with gmpy2 integers (product-tree splitting, one gcd at
the end); results are handed back as ``fractions.Fraction``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2

from .errors import InvalidArgument

_Q_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def coprime_fraction(num, den) -> Fraction:
    """Fraction from a pair already known to be in lowest terms, den > 0."""
    num, den = int(num), int(den)
    try:
        return Fraction(num, den, _normalize=False)
    except TypeError:  # newer Pythons dropped the private flag
        return Fraction(num, den)


def from_mpq(q) -> Fraction:
    # mpq is always reduced
    return coprime_fraction(q.numerator, q.denominator)


def parse_q(text: str) -> Fraction:
    """Parse ``P/Q`` or an integer. Decimal and float notation is rejected."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise InvalidArgument(f"expected a P/Q string, got {text!r}")
    m = _Q_RE.match(text)
    if not m:
        raise InvalidArgument(f"not an exact rational (use P/Q): {text!r}")
    num = int(gmpy2.mpz(m.group(1)))
    den = int(gmpy2.mpz(m.group(2))) if m.group(2) is not None else 1
    if den == 0:
        raise InvalidArgument(f"zero denominator in {text!r}")
    return Fraction(num, den)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InvalidArgument("boolean is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_q(x)
    if type(x).__name__ == "mpq":
        return from_mpq(x)
    raise InvalidArgument(f"expected an exact rational, got {type(x).__name__}")


def int_str(n) -> str:
    # Python 3.10 refuses int->str beyond 4300 digits by default
    return gmpy2.digits(gmpy2.mpz(n))


def fmt_q(x) -> str:
    """Always ``P/Q``, including ``n/1`` for integers."""
    x = as_fraction(x)
    return f"{int_str(x.numerator)}/{int_str(x.denominator)}"


def _tree_sum(pairs: list) -> tuple:
    # pairs of (num, den) as mpz; returns an unreduced (num, den)
    while len(pairs) > 1:
        nxt = []
        for k in range(0, len(pairs) - 1, 2):
            (a, b), (c, d) = pairs[k], pairs[k + 1]
            if b == d:
                nxt.append((a + c, b))
            else:
                nxt.append((a * d + c * b, b * d))
        if len(pairs) % 2:
            nxt.append(pairs[-1])
        pairs = nxt
    return pairs[0]


def exact_sum(nums: Sequence, dens: Sequence) -> Fraction:
    """Exact value of sum(nums[k]/dens[k]).

    Terms sharing a denominator are grouped first, so families like
    ``a/p`` with repeated ``p`` cost one tree leaf per distinct ``p``.
    """
    groups: dict = {}
    for n, d in zip(nums, dens):
        n, d = int(n), int(d)
        if d <= 0:
            raise InvalidArgument("denominators must be positive")
        groups[d] = groups.get(d, 0) + n
    if not groups:
        return Fraction(0)
    pairs = [(gmpy2.mpz(n), gmpy2.mpz(d)) for d, n in sorted(groups.items())]
    num, den = _tree_sum(pairs)
    return from_mpq(gmpy2.mpq(num, den))


def sum_fractions(values: Iterable) -> Fraction:
    vals = [as_fraction(v) for v in values]
    return exact_sum([v.numerator for v in vals], [v.denominator for v in vals])


def reciprocal_sum(values: Sequence[int]) -> tuple:
    """Unreduced (num, den) of sum 1/v by binary splitting; den = prod v."""
    if len(values) == 0:
        return gmpy2.mpz(0), gmpy2.mpz(1)
    pairs = [(gmpy2.mpz(1), gmpy2.mpz(int(v))) for v in values]
    while len(pairs) > 1:
        nxt = []
        for k in range(0, len(pairs) - 1, 2):
            (a, b), (c, d) = pairs[k], pairs[k + 1]
            nxt.append((a * d + c * b, b * d))
        if len(pairs) % 2:
            nxt.append(pairs[-1])
        pairs = nxt
    return pairs[0]


def mean_variance(values) -> tuple:
    """Exact mean and sample variance (0 for a single value) of rationals."""
    qs = [gmpy2.mpq(v.numerator, v.denominator) for v in map(as_fraction, values)]
    n = len(qs)
    if n == 0:
        raise InvalidArgument("no values")
    mean = sum(qs, gmpy2.mpq(0)) / n
    if n == 1:
        return from_mpq(mean), Fraction(0)
    var = sum(((q - mean) ** 2 for q in qs), gmpy2.mpq(0)) / (n - 1)
    return from_mpq(mean), from_mpq(var)


def ceil_div(a: int, b: int) -> int:
    return -((-a) // b)
