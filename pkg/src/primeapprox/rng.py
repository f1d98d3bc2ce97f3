"""Counter-based SplitMix64 streams.

Every draw is ``mix(key + (counter + 1) * GAMMA)`` where ``key`` is derived
from a seed and a path of stream labels. Draws are addressable by counter,
so the value for (seed, stream, k) never depends on how many other values
were requested or on how work was split across workers.

Constants are the published SplitMix64 ones (Steele, Lea, Flood 2014).
"""

from __future__ import annotations

import hashlib

import numpy as np

GAMMA = 0x9E3779B97F4A7C15
M1 = 0xBF58476D1CE4E5B9
M2 = 0x94D049BB133111EB
MASK = (1 << 64) - 1
NAME = "splitmix64-counter/v1"

_G = np.uint64(GAMMA)
_M1 = np.uint64(M1)
_M2 = np.uint64(M2)


def mix64(z: int) -> int:
    z &= MASK
    z = ((z ^ (z >> 30)) * M1) & MASK
    z = ((z ^ (z >> 27)) * M2) & MASK
    return z ^ (z >> 31)


def _label(x) -> int:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return int(x) & MASK
    digest = hashlib.sha256(str(x).encode()).digest()
    return int.from_bytes(digest[:8], "little")


def stream_key(seed: int, *path) -> int:
    """Fold a seed and stream labels (ints or strings) into a 64-bit key."""
    k = mix64(_label(seed) + GAMMA)
    for part in path:
        k = mix64(k ^ mix64(_label(part) + GAMMA))
    return k


def draws(key: int, counters) -> np.ndarray:
    """uint64 draws for an array of counters."""
    c = np.asarray(counters, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(key) + (c + np.uint64(1)) * _G
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
        z = z ^ (z >> np.uint64(31))
    return z


def uniform_below(key: int, counters, bounds) -> np.ndarray:
    """Draws reduced mod ``bounds`` (each < 2^24, so modulo bias < 2^-40)."""
    z = draws(key, counters)
    return (z % np.asarray(bounds, dtype=np.uint64)).astype(np.int64)


def dyadic_uniform(key: int, counters, bits: int = 38) -> np.ndarray:
    """Integers u in [0, 2^bits); the sample point is u / 2^bits."""
    z = draws(key, counters)
    return (z >> np.uint64(64 - bits)).astype(np.int64)


def unit_floats(key: int, counters) -> np.ndarray:
    z = draws(key, counters)
    return (z >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))
