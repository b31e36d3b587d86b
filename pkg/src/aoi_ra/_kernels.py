"""Per-round contention kernels.

Both implementations fill the same four per-round arrays from the same
counter-based random streams, so their outputs are identical:

``u_sent``      the tagged sensor transmitted (packet or request)
``u_success``   the tagged sensor's transmission was alone in its slot
``admitted``    number of singleton slots (RTA: access-phase size)
``position``    1-based slot (FSA) or TDMA position (RTA) of a successful
                tagged transmission, 0 otherwise

Set ``AOI_RA_BACKEND=numpy`` to bypass numba.
"""

from __future__ import annotations

import os

import numpy as np

from aoi_ra._rng import DRAWS_PER_ROUND, GAMMA, INV_2_53, MIX1, MIX2, draw_array

CODE_SA, CODE_FSA, CODE_RTA = 0, 1, 2
BACKEND_ENV = "AOI_RA_BACKEND"
NUMPY_CHUNK = 1 << 15

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


def default_backend() -> str:
    choice = os.environ.get(BACKEND_ENV, "").strip().lower()
    if choice in ("numpy", "python", "0", "off"):
        return "numpy"
    if choice not in ("", "numba", "1", "on"):
        raise ValueError(f"{BACKEND_ENV} must be 'numba' or 'numpy', got {choice!r}")
    return "numba" if numba is not None else "numpy"


def run_rounds(code: int, keys: np.ndarray, k: int, p: float, tracked: int,
               start: int, count: int, backend: str | None = None):
    backend = backend or default_backend()
    if backend == "numba":
        if numba is None:
            raise RuntimeError("numba backend requested but numba is not installed")
        out = _alloc(count)
        _rounds_numba(code, keys, k, p, tracked, start, count, *out)
        return out
    if backend != "numpy":
        raise ValueError(f"unknown backend {backend!r}")
    parts = [_rounds_numpy(code, keys, k, p, tracked, s, min(NUMPY_CHUNK, start + count - s))
             for s in range(start, start + count, NUMPY_CHUNK)]
    if not parts:
        return _alloc(0)
    return tuple(np.concatenate(cols) for cols in zip(*parts))


def _alloc(count: int):
    return (np.zeros(count, np.bool_), np.zeros(count, np.bool_),
            np.zeros(count, np.int32), np.zeros(count, np.int32))


def _rounds_numpy(code, keys, k, p, tracked, start, count):
    n = keys.shape[0]
    base = (np.arange(start, start + count, dtype=np.uint64) * np.uint64(DRAWS_PER_ROUND))[:, None]
    row_keys = keys[None, :]
    sent = (draw_array(row_keys, base) >> np.uint64(11)).astype(np.float64) * INV_2_53 < p
    slot = (((draw_array(row_keys, base + np.uint64(1)) >> np.uint64(11)) * np.uint64(k))
            >> np.uint64(53)).astype(np.int64)
    flat = (np.arange(count)[:, None] * k + slot)[sent]
    counts = np.bincount(flat, minlength=count * k).reshape(count, k)
    admitted = (counts == 1).sum(axis=1).astype(np.int32)
    single = sent & (np.take_along_axis(counts, slot, axis=1) == 1)
    u_sent = sent[:, tracked].copy()
    u_success = single[:, tracked].copy()
    if code == CODE_RTA:
        order = draw_array(row_keys, base + np.uint64(2))
        mine = order[:, tracked][:, None]
        idx = np.arange(n)[None, :]
        ahead = single & ((order < mine) | ((order == mine) & (idx < tracked)))
        position = np.where(u_success, ahead.sum(axis=1) + 1, 0)
    else:
        position = np.where(u_success, slot[:, tracked] + 1, 0)
    return u_sent, u_success, admitted, position.astype(np.int32)


if numba is not None:
    _G = np.uint64(GAMMA)
    _M1 = np.uint64(MIX1)
    _M2 = np.uint64(MIX2)

    @numba.njit(cache=True, inline="always")
    def _draw(key, counter):
        z = key + (counter + np.uint64(1)) * _G
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
        return z ^ (z >> np.uint64(31))

    @numba.njit(cache=True)
    def _rounds_numba(code, keys, k, p, tracked, start, count,
                      u_sent, u_success, admitted, position):
        n = keys.shape[0]
        counts = np.zeros(k, np.int64)
        slots = np.empty(n, np.int64)
        uk = np.uint64(k)
        for i in range(count):
            base = np.uint64(start + i) * np.uint64(DRAWS_PER_ROUND)
            counts[:] = 0
            for s in range(n):
                x = _draw(keys[s], base)
                if np.float64(x >> np.uint64(11)) * INV_2_53 < p:
                    y = _draw(keys[s], base + np.uint64(1))
                    sl = np.int64(((y >> np.uint64(11)) * uk) >> np.uint64(53))
                    slots[s] = sl
                    counts[sl] += 1
                else:
                    slots[s] = -1
            m = 0
            for j in range(k):
                if counts[j] == 1:
                    m += 1
            admitted[i] = m
            us = slots[tracked]
            u_sent[i] = us >= 0
            ok = us >= 0 and counts[us] == 1
            u_success[i] = ok
            if not ok:
                position[i] = 0
            elif code == CODE_RTA:
                mine = _draw(keys[tracked], base + np.uint64(2))
                ahead = 0
                for s in range(n):
                    if s == tracked or slots[s] < 0 or counts[slots[s]] != 1:
                        continue
                    other = _draw(keys[s], base + np.uint64(2))
                    if other < mine or (other == mine and s < tracked):
                        ahead += 1
                position[i] = ahead + 1
            else:
                position[i] = us + 1
else:  # pragma: no cover
    _rounds_numba = None
