"""Numerator sequences p -> a_p: random, greedy and rotation families."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

import numpy as np

from . import contfrac, rng
from .errors import InvalidArgument, MissingEntry, OutOfRange
from .primes import PrimeTable, get_table, table_for


class NumeratorSequence:
    """Immutable finite map prime p -> a_p with 0 <= a_p < p."""

    def __init__(self, primes, values, limit: int, provenance: dict | None = None):
        primes = np.asarray(primes, dtype=np.int64)
        values = np.asarray(values, dtype=np.int64)
        if primes.shape != values.shape:
            raise InvalidArgument("primes and values differ in length")
        if len(primes) and (np.any(values < 0) or np.any(values >= primes)):
            bad = int(np.flatnonzero((values < 0) | (values >= primes))[0])
            raise InvalidArgument(f"a_p out of range at p={int(primes[bad])}")
        if len(primes) > 1 and np.any(np.diff(primes) <= 0):
            raise InvalidArgument("primes must be strictly increasing")
        if len(primes) and int(primes[-1]) > limit:
            raise InvalidArgument("entry beyond limit")
        primes = primes.copy()
        values = values.copy()
        primes.setflags(write=False)
        values.setflags(write=False)
        self.primes = primes
        self.values = values
        self.limit = int(limit)
        self.provenance = dict(provenance or {})

    def __len__(self):
        return len(self.primes)

    def __repr__(self):
        gen = self.provenance.get("generator", "?")
        return f"NumeratorSequence({gen}, limit={self.limit}, entries={len(self)})"

    def __eq__(self, other):
        if not isinstance(other, NumeratorSequence):
            return NotImplemented
        return (
            self.limit == other.limit
            and self.provenance == other.provenance
            and np.array_equal(self.primes, other.primes)
            and np.array_equal(self.values, other.values)
        )

    def __contains__(self, p):
        k = int(np.searchsorted(self.primes, p))
        return k < len(self.primes) and int(self.primes[k]) == p

    def __getitem__(self, p: int) -> int:
        k = int(np.searchsorted(self.primes, p))
        if k < len(self.primes) and int(self.primes[k]) == p:
            return int(self.values[k])
        raise MissingEntry(int(p))

    def get(self, p: int, default=None):
        try:
            return self[p]
        except MissingEntry:
            return default

    def items(self):
        return zip(self.primes.tolist(), self.values.tolist())

    def as_dict(self) -> dict:
        return dict(self.items())

    def window(self, lo: int, hi: int) -> tuple:
        """(primes, values) for lo <= p <= hi."""
        a = int(np.searchsorted(self.primes, lo, side="left"))
        b = int(np.searchsorted(self.primes, hi, side="right"))
        return self.primes[a:b], self.values[a:b]

    def require(self, lo: int, hi: int, table: PrimeTable | None = None) -> tuple:
        """(primes, values) for every prime lo <= p <= hi, or MissingEntry."""
        if hi > self.limit:
            raise OutOfRange(f"{hi} exceeds the sequence limit {self.limit}")
        want = table_for(hi, table).primes_in(lo, hi)
        ps, vs = self.window(lo, hi)
        if len(ps) != len(want) or not np.array_equal(ps, want):
            have = set(ps.tolist())
            missing = next(int(p) for p in want.tolist() if p not in have)
            raise MissingEntry(missing)
        return ps, vs

    # serialisation: one JSON header line, then "p\ta_p" lines
    def dumps(self) -> str:
        header = {
            "schema": 1,
            "kind": "numerator-sequence",
            "limit": self.limit,
            "count": len(self),
            "provenance": self.provenance,
        }
        lines = [json.dumps(header, sort_keys=True, separators=(",", ":"))]
        lines.extend(f"{p}\t{a}" for p, a in self.items())
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "NumeratorSequence":
        rows = text.splitlines()
        if not rows:
            raise InvalidArgument("empty sequence file")
        try:
            header = json.loads(rows[0])
        except json.JSONDecodeError as exc:
            raise InvalidArgument(f"bad sequence header: {exc}") from None
        if header.get("kind") != "numerator-sequence" or header.get("schema") != 1:
            raise InvalidArgument("not a schema-1 numerator sequence")
        body = [r for r in rows[1:] if r]
        if len(body) != header.get("count"):
            raise InvalidArgument("entry count does not match header")
        ps = np.empty(len(body), dtype=np.int64)
        vs = np.empty(len(body), dtype=np.int64)
        for k, r in enumerate(body):
            p, a = r.split("\t")
            ps[k], vs[k] = int(p), int(a)
        return cls(ps, vs, header["limit"], header.get("provenance"))

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.dumps())

    @classmethod
    def load(cls, path) -> "NumeratorSequence":
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())


# ------------------------------------------------------------------ random


def random_sequence(limit: int, seed: int = 0, table: PrimeTable | None = None) -> NumeratorSequence:
    """Uniform a_p; the draw for the n-th prime uses counter n - 1 of the
    (seed, "seq") stream, so prefixes agree across limits."""
    if limit < 2:
        raise InvalidArgument("limit must be >= 2")
    table = table_for(limit, table)
    ps = table.primes_in(2, limit)
    vals = rng.uniform_below(rng.stream_key(seed, "seq"), np.arange(len(ps)), ps)
    prov = {"generator": "random", "seed": int(seed), "prng": rng.NAME}
    return NumeratorSequence(ps, vals, limit, prov)


# ------------------------------------------------------------------ greedy


def _greedy_runs(table: PrimeTable, iterations: int | None = None, upto: int | None = None):
    """Chained greedy coverings starting at 2.

    Yields (pairs, complete) per covering; stops after ``iterations``
    coverings or once primes pass ``upto``.
    """
    plist = table.primes.tolist()
    k = 0
    done = 0
    while iterations is None or done < iterations:
        pairs = []
        xn, xd = 0, 1
        while xn < xd:
            if k >= len(plist):
                raise OutOfRange(
                    f"greedy covering {done + 1} passes sieve limit {table.limit}",
                    state={"iteration": done + 1, "pairs": pairs, "x": Fraction(xn, xd)},
                )
            q = plist[k]
            if upto is not None and q > upto:
                yield pairs, False
                return
            a = q * xn // xd
            pairs.append((q, a))
            xn, xd = a + 2, q
            k += 1
        yield pairs, True
        done += 1


def greedy_cover_once(p0: int, table: PrimeTable | None = None) -> list:
    """Cover [0, 1] once with intervals (a_q/q - 2/q, a_q/q + 2/q) from p0 on."""
    table = table or get_table()
    if not table.is_prime(p0):
        raise InvalidArgument(f"p0={p0} is not prime")
    plist = table.primes
    k = table.index_of(p0) - 1
    pairs = []
    xn, xd = 0, 1
    it = iter(plist[k:].tolist())
    while xn < xd:
        q = next(it, None)
        if q is None:
            raise OutOfRange(
                f"greedy covering from {p0} passes sieve limit {table.limit}",
                state={"pairs": pairs, "x": Fraction(xn, xd)},
            )
        a = q * xn // xd
        pairs.append((q, a))
        xn, xd = a + 2, q
    return pairs


def greedy_sequence(iterations: int, table: PrimeTable | None = None) -> NumeratorSequence:
    if iterations < 1:
        raise InvalidArgument("iterations must be >= 1")
    table = table or get_table()
    ps, vs, bounds = [], [], []
    for pairs, _ in _greedy_runs(table, iterations=iterations):
        bounds.append([pairs[0][0], pairs[-1][0]])
        for p, a in pairs:
            ps.append(p)
            vs.append(a)
    prov = {"generator": "greedy", "p0": 2, "iterations": iterations, "coverings": bounds}
    return NumeratorSequence(ps, vs, ps[-1], prov)


def greedy_prefix(limit: int, table: PrimeTable | None = None) -> NumeratorSequence:
    """Greedy values for every prime <= limit (the last covering may be partial)."""
    table = table or get_table()
    ps, vs, bounds = [], [], []
    for pairs, complete in _greedy_runs(table, upto=limit):
        if pairs:
            bounds.append([pairs[0][0], pairs[-1][0]] + ([] if complete else ["partial"]))
        for p, a in pairs:
            ps.append(p)
            vs.append(a)
        if not complete:
            break
    prov = {"generator": "greedy", "p0": 2, "coverings": bounds}
    return NumeratorSequence(ps, vs, limit, prov)


def greedy_coverings(seq: NumeratorSequence) -> list:
    """Iteration ranges recorded in a greedy sequence's provenance."""
    return [tuple(b[:2]) for b in seq.provenance.get("coverings", []) if len(b) == 2]


# ---------------------------------------------------------------- rotations


def _floor_many(beta, ms: list) -> list:
    beta = contfrac.as_real(beta)
    surd = contfrac._exact_surd(beta)
    if surd is None:
        return [contfrac.floor_mul(beta, m) for m in ms]
    a, b, d, c = surd.a, surd.b, surd.d, surd.c
    b2d = b * b * d
    out = []
    if b > 0:
        for m in ms:
            out.append((m * a + isqrt(b2d * m * m)) // c)
    else:
        for m in ms:
            out.append((m * a - isqrt(b2d * m * m) - 1) // c)
    return out


def _rotation(beta, limit, table, kind):
    if limit < 2:
        raise InvalidArgument("limit must be >= 2")
    table = table_for(limit, table)
    frac = contfrac.frac_part(contfrac.as_real(beta))
    ps = table.primes_in(2, limit).tolist()
    if kind == "rotation":
        ms = [p * (k + 1) for k, p in enumerate(ps)]
    else:
        ms = [p * p for p in ps]
    vals = [f % p for f, p in zip(_floor_many(frac, ms), ps)]
    prov = {"generator": kind, "beta": contfrac.format_real(contfrac.as_real(beta))}
    return NumeratorSequence(ps, vals, limit, prov)


def rotation_sequence(beta, limit: int, table: PrimeTable | None = None) -> NumeratorSequence:
    """a_p = floor(p * n_p * beta) mod p."""
    return _rotation(beta, limit, table, "rotation")


def prime_rotation_sequence(beta, limit: int, table: PrimeTable | None = None) -> NumeratorSequence:
    """b_p = floor(p^2 * beta) mod p."""
    return _rotation(beta, limit, table, "prime-rotation")


GENERATORS = ("random", "greedy", "rotation", "prime-rotation")


def make_sequence(gen: str, limit: int, *, seed: int = 0, beta=None,
                  table: PrimeTable | None = None) -> NumeratorSequence:
    if gen == "random":
        return random_sequence(limit, seed, table)
    if gen == "greedy":
        return greedy_prefix(limit, table)
    if gen in ("rotation", "prime-rotation"):
        if beta is None:
            raise InvalidArgument(f"{gen} needs beta")
        fn = rotation_sequence if gen == "rotation" else prime_rotation_sequence
        return fn(beta, limit, table)
    raise InvalidArgument(f"unknown generator {gen!r}")
