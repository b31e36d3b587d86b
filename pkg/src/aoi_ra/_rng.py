"""Counter-based SplitMix64 streams.

Sensor ``s`` under seed ``seed`` owns the SplitMix64 generator whose state
starts at ``stream_key(seed, s)``; its ``c``-th output is
``mix64(key + (c + 1) * GAMMA)``.  Because an output depends only on
``(seed, sensor, counter)``, the scalar, numpy and numba code paths draw the
same numbers in any order.

Each round ``r`` uses counters ``3r`` (transmit decision), ``3r + 1``
(slot choice) and ``3r + 2`` (TDMA ordering key).
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
DRAWS_PER_ROUND = 3
INV_2_53 = 1.0 / (1 << 53)


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def stream_key(seed: int, sensor: int) -> int:
    return mix64((seed & MASK64) + (sensor + 1) * GAMMA)


def draw(key: int, counter: int) -> int:
    return mix64(key + (counter + 1) * GAMMA)


def to_unit(x: int) -> float:
    """Top 53 bits as a double in [0, 1)."""
    return (x >> 11) * INV_2_53


def to_index(x: int, n: int) -> int:
    """Uniform index in ``range(n)`` for ``n < 2**11``."""
    return ((x >> 11) * n) >> 53


def stream_keys(seed: int, n: int) -> np.ndarray:
    return np.array([stream_key(seed, s) for s in range(n)], dtype=np.uint64)


_G = np.uint64(GAMMA)
_M1 = np.uint64(MIX1)
_M2 = np.uint64(MIX2)


def mix64_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def draw_array(keys: np.ndarray, counters: np.ndarray) -> np.ndarray:
    """Broadcasting ``draw`` over uint64 arrays (wrapping arithmetic)."""
    return mix64_array(keys + (counters + np.uint64(1)) * _G)
