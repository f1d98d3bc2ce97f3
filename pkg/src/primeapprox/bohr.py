"""Bohr sets N(i, j) = {N <= 2^j : ||N beta|| <= 2^-i}, rank-2 progressions
P(x, y, z) = {a x + b y : |a|, |b| <= z}, and n/phi(n) sums."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import contfrac
from .errors import InvalidArgument, OutOfRange
from .exact import ceil_div, exact_sum

J_CAP = 24


@dataclass(frozen=True)
class BohrSet:
    beta: str
    i: int
    j: int
    members: tuple

    def __len__(self):
        return len(self.members)

    def __contains__(self, n):
        return n in set(self.members)


def _levels(beta, j: int, imax: int) -> np.ndarray:
    """For N = 1..2^j the largest i <= imax with ||N beta|| <= 2^-i (exact)."""
    n_max = 1 << j
    N = np.arange(1, n_max + 1, dtype=np.int64)
    if contfrac.is_rational(beta):
        v = contfrac.as_real(beta).value
        u, q = v.numerator % v.denominator, v.denominator
        out = np.empty(n_max, dtype=np.int64)
        for k, n in enumerate(N.tolist()):
            r = (n * u) % q
            d = min(r, q - r)
            lev = 0
            while lev < imax and d * (1 << (lev + 1)) <= q:
                lev += 1
            out[k] = lev
        return out
    # proxy P/Q with Q < 2^38 so N * P stays inside int64
    conv = contfrac.frac_convergents(beta, 200)
    P, Q, Qn = 0, 1, None
    for a, p, q in conv.entries:
        if q >= 1 << 38:
            Qn = q
            break
        P, Q = p, q
    if Qn is None:
        raise contfrac.PrecisionExhausted("not enough quotients for a 2^38 proxy")
    err = 1.0 / (Q * Qn)  # |beta - P/Q| < 1/(Q Q_next)
    r = np.mod(N * P, Q)
    d = np.minimum(r, Q - r).astype(np.float64) / Q
    out = np.zeros(n_max, dtype=np.int64)
    slack = (N * err) * 4 + 1e-15
    unsure = np.zeros(n_max, dtype=bool)
    for lev in range(1, imax + 1):
        t = 2.0 ** -lev
        sure_in = d + slack < t
        sure_out = d - slack > t
        out[sure_in] = lev
        unsure |= ~(sure_in | sure_out)
    for k in np.flatnonzero(unsure).tolist():
        n = k + 1
        lev = 0
        while lev < imax and contfrac.dist_le(beta, n, Fraction(1, 1 << (lev + 1))):
            lev += 1
        out[k] = lev
    return out


class BohrTable:
    """Levels of ||N beta|| for all N <= 2^jmax, answering N(i, j) quickly."""

    def __init__(self, beta, jmax: int, imax: int | None = None):
        if jmax > J_CAP:
            raise OutOfRange(f"j={jmax} exceeds the cap {J_CAP}")
        self.beta = contfrac.as_real(beta)
        self.jmax = jmax
        self.imax = jmax if imax is None else imax
        self.levels = _levels(self.beta, jmax, self.imax)

    def members(self, i: int, j: int) -> np.ndarray:
        if j > self.jmax or i > self.imax:
            raise OutOfRange("outside the table")
        lv = self.levels[: 1 << j]
        return np.flatnonzero(lv >= i) + 1

    def bohr(self, i: int, j: int) -> BohrSet:
        return BohrSet(contfrac.format_real(self.beta), i, j, tuple(self.members(i, j).tolist()))


def bohr_enumerate(beta, i: int, j: int) -> BohrSet:
    """{1 <= N <= 2^j : ||N beta|| <= 2^-i}, exact. i = 0 gives every N."""
    if j > J_CAP:
        raise OutOfRange(f"j={j} exceeds the cap {J_CAP}")
    if not (0 <= i <= j):
        raise InvalidArgument("need 0 <= i <= j")
    return BohrTable(beta, j, max(i, 0)).bohr(i, j)


# ----------------------------------------------------------------- GAPs


@dataclass(frozen=True)
class GapSpec:
    x: int
    y: int
    z: int

    def __post_init__(self):
        if self.x < 1 or self.y <= self.x or math.gcd(self.x, self.y) != 1 or self.z < 0:
            raise InvalidArgument("need 1 <= x < y, gcd(x, y) = 1, z >= 0")


def _ceil_scaled_norm(beta, n: int, scale: int, shift: Fraction) -> int:
    """ceil(scale * ||n beta|| + shift), exact."""
    beta = contfrac.as_real(beta)
    if contfrac.is_rational(beta):
        v = (n * beta.value) % 1
        val = scale * min(v, 1 - v) + shift
        return math.ceil(val)
    f = contfrac.floor_mul(beta, n)
    # below 1/2: ||n beta|| = n beta - f, else f + 1 - n beta
    if contfrac.sign_affine(beta, n, -f - Fraction(1, 2)) < 0:
        return contfrac.ceil_affine(beta, scale * n, -scale * f + shift)
    return contfrac.ceil_affine(beta, -scale * n, scale * (f + 1) + shift)


def gap_params(beta, i: int, j: int, B: int | None = None) -> GapSpec:
    """x = q_r, y = q_r + q_{r-1} with q_{r-1} < 2^{(i+j)/2} <= q_r, and
    z = ceil(max(2^j ||x beta|| + x/2^i, 2^j ||y beta|| + y/2^i))."""
    if not (0 <= i <= j):
        raise InvalidArgument("need 0 <= i <= j")
    bmax = contfrac.badly_range_max(beta, i - 2, j + 2)
    if B is not None and bmax > B:
        raise InvalidArgument(f"[{i - 2}, {j + 2}] is not a {B}-badly approximable range")
    conv = contfrac.frac_convergents(beta, 8)
    k = 8
    target = 1 << (i + j)  # compare q^2 with 2^(i+j)
    while conv.entries[-1][2] ** 2 < target and not conv.short:
        k *= 2
        conv = contfrac.frac_convergents(beta, k)
    qs = [e[2] for e in conv.entries]
    r = next((idx for idx in range(1, len(qs)) if qs[idx] ** 2 >= target), None)
    if r is None:
        raise contfrac.PrecisionExhausted("quotients run out before 2^((i+j)/2)")
    x, y = qs[r], qs[r] + qs[r - 1]
    shift_x = Fraction(x, 1 << i)
    shift_y = Fraction(y, 1 << i)
    z = max(_ceil_scaled_norm(beta, x, 1 << j, shift_x), _ceil_scaled_norm(beta, y, 1 << j, shift_y))
    return GapSpec(x, y, z)


def _ext_gcd(a: int, b: int) -> tuple:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def gap_witness(spec: GapSpec, n: int):
    """(a, b) with a x + b y = n and |a|, |b| <= z, or None."""
    g, s, t = _ext_gcd(spec.x, spec.y)
    a0, b0 = s * n, t * n  # general solution a0 + k y, b0 - k x
    x, y, z = spec.x, spec.y, spec.z
    lo = max(ceil_div(-z - a0, y), ceil_div(b0 - z, x))
    hi = min((z - a0) // y, (b0 + z) // x)
    if lo > hi:
        return None
    return a0 + lo * y, b0 - lo * x


def gap_contains(spec: GapSpec, n: int) -> bool:
    return gap_witness(spec, n) is not None


def gap_contains_many(spec: GapSpec, ns) -> np.ndarray:
    """Vectorized membership for moderate n (int64 arithmetic)."""
    ns = np.asarray(ns, dtype=np.int64)
    g, s, t = _ext_gcd(spec.x, spec.y)
    x, y, z = spec.x, spec.y, spec.z
    if len(ns) and int(np.abs(ns).max()) * max(abs(s), abs(t), x, y, z) >= 1 << 60:
        return np.array([gap_contains(spec, int(n)) for n in ns], dtype=bool)
    a0, b0 = s * ns, t * ns
    lo = np.maximum(-((a0 + z) // y), -((z - b0) // x))
    hi = np.minimum((z - a0) // y, (b0 + z) // x)
    return lo <= hi


def gap_members(spec: GapSpec) -> np.ndarray:
    """Distinct positive members of P(x, y, z), sorted."""
    a = np.arange(-spec.z, spec.z + 1, dtype=np.int64)
    vals = (a[:, None] * spec.x + a[None, :] * spec.y).ravel()
    return np.unique(vals[vals > 0])


def totient_sieve(limit: int) -> np.ndarray:
    """phi(0..limit) with phi(0) = 0, by a prime sieve over multiples."""
    if limit < 1:
        raise InvalidArgument("limit must be >= 1")
    phi = np.arange(limit + 1, dtype=np.int64)
    is_comp = np.zeros(limit + 1, dtype=bool)
    for p in range(2, limit + 1):
        if not is_comp[p]:
            is_comp[2 * p :: p] = True
            phi[p::p] -= phi[p::p] // p
    return phi


_PHI_CACHE: dict = {}


def _phi_table(n: int) -> np.ndarray:
    size = 1 << max(10, (n - 1).bit_length())
    tab = _PHI_CACHE.get("tab")
    if tab is None or len(tab) <= n:
        tab = totient_sieve(size)
        _PHI_CACHE["tab"] = tab
    return tab


def gap_phi_average(spec: GapSpec, phi: np.ndarray | None = None) -> Fraction:
    """Sum of n/phi(n) over distinct positive members of P(x, y, z)."""
    members = gap_members(spec)
    if len(members) == 0:
        return Fraction(0)
    top = int(members[-1])
    if phi is None:
        phi = _phi_table(top)
    elif top >= len(phi):
        raise OutOfRange(f"member {top} exceeds the totient table")
    ph = phi[members]
    g = np.gcd(members, ph)
    num, den = members // g, ph // g
    ud, inv = np.unique(den, return_inverse=True)
    sums = np.zeros(len(ud), dtype=np.int64)
    np.add.at(sums, inv, num)
    return exact_sum(sums.tolist(), ud.tolist())


def phi_ratio_sum(members, phi: np.ndarray) -> float:
    """Float sum of n/phi(n) over the given members."""
    m = np.asarray(members, dtype=np.int64)
    if len(m) and int(m.max()) >= len(phi):
        raise OutOfRange("member exceeds the totient table")
    return float(np.sum(m / phi[m]))


def phi_reference(spec: GapSpec) -> float:
    """z^2 + z log(z y)."""
    z = spec.z
    return float(z * z + (z * math.log(z * spec.y) if z > 0 else 0.0))
