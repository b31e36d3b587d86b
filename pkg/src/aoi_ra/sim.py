"""Seeded Monte Carlo simulation of SA, FSA and RTA under the collision model.

Time advances round by round (a slot in SA, a ``k``-slot frame in FSA, a
request phase plus TDMA superframe in RTA).  Sensors generate at will, so a
delivered packet resets the tagged sensor's age to ``t_pk`` at the end of
its own slot.  The age integral between two deliveries ``Z`` apart is
``t_pk * Z + Z**2 / 2`` exactly; accounting starts at the first delivery
after the warmup rounds.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Any

import numpy as np
from scipy.stats import t as student_t

from aoi_ra import _rng
from aoi_ra._kernels import CODE_FSA, CODE_RTA, CODE_SA, run_rounds
from aoi_ra.analytic import Pmf
from aoi_ra.model import InvalidConfigError, Protocol, ProtocolParams, TimingModel

DEFAULT_BATCHES = 30
ROUND_CHUNK = 1 << 20
ENUMERATION_LIMIT = 5_000_000

_CODES = {Protocol.SA: CODE_SA, Protocol.FSA: CODE_FSA, Protocol.RTA: CODE_RTA}


class NoUpdateError(RuntimeError):
    """Too few deliveries after warmup to form a single renewal interval."""

    def __init__(self, message: str, partial: dict[str, Any]):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class SimConfig:
    params: ProtocolParams
    timing: TimingModel
    horizon_rounds: int
    warmup_rounds: int = 0
    seed: int = 0
    tracked_sensor: int = 0
    n_batches: int = DEFAULT_BATCHES

    def __post_init__(self) -> None:
        if not self.horizon_rounds > self.warmup_rounds >= 0:
            raise InvalidConfigError("need horizon_rounds > warmup_rounds >= 0")
        if not 0 <= self.tracked_sensor < self.params.n_sensors:
            raise InvalidConfigError(f"tracked sensor {self.tracked_sensor} out of range")
        if self.n_batches < 2:
            raise InvalidConfigError("batch means need at least two batches")
        if self.params.k >= 1 << 11:
            raise InvalidConfigError("k must stay below 2048")


@dataclass(frozen=True)
class AoIStats:
    mean_aoi: float
    mean_power: float
    n_updates: int
    aoi_ci_halfwidth: float
    power_ci_halfwidth: float
    mean_interval: float
    interval_ci_halfwidth: float
    mean_round_duration: float
    elapsed_sim_time: float
    area_total: float = field(repr=False)
    interval_total: float = field(repr=False)


@dataclass(frozen=True)
class RoundArrays:
    u_sent: np.ndarray
    u_success: np.ndarray
    admitted: np.ndarray
    position: np.ndarray


def simulate_rounds(params: ProtocolParams, seed: int, n_rounds: int, start_round: int = 0,
                    tracked: int = 0, backend: str | None = None) -> RoundArrays:
    """Raw per-round contention outcomes, without any age accounting."""
    keys = _rng.stream_keys(seed, params.n_sensors)
    out = run_rounds(_CODES[params.protocol], keys, params.k, float(params.access_prob),
                     tracked, start_round, n_rounds, backend)
    return RoundArrays(*out)


def _round_timing(protocol: Protocol, k: int, timing: TimingModel, rounds: RoundArrays, tx_power: float):
    """Per-round duration, in-round delivery offset and tagged-sensor energy."""
    t_pk, t_r = timing.t_pk, timing.t_r
    if protocol is Protocol.RTA:
        head = k * t_r
        duration = head + rounds.admitted * t_pk
        offset = head + rounds.position * t_pk
        energy = (rounds.u_sent * t_r + rounds.u_success * t_pk) * tx_power
    else:
        duration = np.full(rounds.u_sent.shape, k * t_pk)
        offset = rounds.position * t_pk
        energy = rounds.u_sent * (t_pk * tx_power)
    return duration, offset, energy


def _batch_halfwidth(num: np.ndarray, den: np.ndarray, n_batches: int) -> float:
    b = min(n_batches, num.size)
    if b < 2:
        return math.inf
    ratios = np.array([a.sum() / d.sum() for a, d in zip(np.array_split(num, b), np.array_split(den, b))])
    return float(student_t.ppf(0.975, b - 1) * ratios.std(ddof=1) / math.sqrt(b))


def simulate(config: SimConfig, backend: str | None = None) -> AoIStats:
    """Run ``config.horizon_rounds`` rounds and return tagged-sensor statistics.

    Output depends only on ``config``; both kernel backends give identical
    results.
    """
    params, timing = config.params, config.timing
    if params.access_prob <= 0.0:
        raise InvalidConfigError("access probability must be positive to simulate")
    keys = _rng.stream_keys(config.seed, params.n_sensors)
    code = _CODES[params.protocol]

    clock = 0.0
    energy_clock = 0.0
    measured_time = 0.0
    times: list[np.ndarray] = []
    energies: list[np.ndarray] = []
    for start in range(0, config.horizon_rounds, ROUND_CHUNK):
        count = min(ROUND_CHUNK, config.horizon_rounds - start)
        rounds = RoundArrays(*run_rounds(code, keys, params.k, float(params.access_prob),
                                         config.tracked_sensor, start, count, backend))
        duration, offset, energy = _round_timing(params.protocol, params.k, timing, rounds, params.tx_power)
        ends = clock + np.cumsum(duration)
        starts = ends - duration
        energy_ends = energy_clock + np.cumsum(energy)
        hit = rounds.u_success.copy()
        first_measured = config.warmup_rounds - start
        if first_measured > 0:
            hit[:first_measured] = False
            measured_time += duration[first_measured:].sum()
        else:
            measured_time += duration.sum()
        times.append(starts[hit] + offset[hit])
        energies.append(energy_ends[hit])
        clock = float(ends[-1])
        energy_clock = float(energy_ends[-1])

    measured_rounds = config.horizon_rounds - config.warmup_rounds
    success_times = np.concatenate(times)
    energy_marks = np.concatenate(energies)
    if success_times.size < 2:
        raise NoUpdateError(
            f"only {success_times.size} delivery(ies) after warmup; cannot form a renewal interval",
            {"deliveries": int(success_times.size), "elapsed_sim_time": clock,
             "energy": energy_clock, "rounds": config.horizon_rounds},
        )
    z = np.diff(success_times)
    area = timing.t_pk * z + 0.5 * z * z
    spent = np.diff(energy_marks)
    total_z = float(z.sum())
    total_area = float(area.sum())
    b = config.n_batches
    return AoIStats(
        mean_aoi=total_area / total_z,
        mean_power=float(spent.sum()) / total_z,
        n_updates=int(z.size),
        aoi_ci_halfwidth=_batch_halfwidth(area, z, b),
        power_ci_halfwidth=_batch_halfwidth(spent, z, b),
        mean_interval=total_z / z.size,
        interval_ci_halfwidth=_batch_halfwidth(z, np.ones_like(z), b),
        mean_round_duration=float(measured_time / measured_rounds),
        elapsed_sim_time=clock,
        area_total=total_area,
        interval_total=total_z,
    )


# --------------------------------------------------------------------------
# scalar reference for one round


@dataclass(frozen=True)
class RoundOutcome:
    admitted: int
    u_sent: bool
    u_success: bool
    position: int
    duration: float


def simulate_round(params: ProtocolParams, timing: TimingModel, seed: int, round_index: int,
                   tracked: int = 0) -> RoundOutcome:
    """One round computed sensor by sensor in plain Python.

    Draws the same stream values as the kernels; used to cross-check them.
    """
    n, k, p = params.n_sensors, params.k, params.access_prob
    base = round_index * _rng.DRAWS_PER_ROUND
    slots: list[int] = []
    for s in range(n):
        key = _rng.stream_key(seed, s)
        if _rng.to_unit(_rng.draw(key, base)) < p:
            slots.append(_rng.to_index(_rng.draw(key, base + 1), k))
        else:
            slots.append(-1)
    occupancy = [0] * k
    for sl in slots:
        if sl >= 0:
            occupancy[sl] += 1
    singles = [s for s, sl in enumerate(slots) if sl >= 0 and occupancy[sl] == 1]
    admitted = len(singles)
    mine = slots[tracked]
    success = tracked in singles
    position = 0
    if success:
        if params.protocol is Protocol.RTA:
            order = sorted(singles, key=lambda s: (_rng.draw(_rng.stream_key(seed, s), base + 2), s))
            position = order.index(tracked) + 1
        else:
            position = mine + 1
    if params.protocol is Protocol.RTA:
        duration = k * timing.t_r + admitted * timing.t_pk
    else:
        duration = k * timing.t_pk
    return RoundOutcome(admitted, mine >= 0, success, position, duration)


def simulate_rta_round(n: int, k: int, pi: float, timing: TimingModel, seed: int,
                       round_index: int, tracked: int = 0) -> RoundOutcome:
    """Request phase plus access phase of one RTA round."""
    return simulate_round(ProtocolParams(Protocol.RTA, n, pi, k), timing, seed, round_index, tracked)


# --------------------------------------------------------------------------
# exact enumeration of one request phase


CONDITIONS = ("unconditional", "u_fails", "u_succeeds")


def enumerate_request_phase(n: int, k: int, pi, condition: str = "unconditional",
                            limit: int = ENUMERATION_LIMIT) -> Pmf:
    """Exact PMF of the number of singleton request slots.

    Sensor 0 is the tagged sensor.  The other ``n - 1`` sensors are
    enumerated by occupancy vector (silent, slot 1, ..., slot k) with
    multinomial weights, which covers every send/slot outcome.  A
    :class:`~fractions.Fraction` (or int) ``pi`` gives Fraction masses.
    """
    if condition not in CONDITIONS:
        raise ValueError(f"condition must be one of {CONDITIONS}, got {condition!r}")
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    size = math.comb(n - 1 + k, k) * (k + 1)
    if size > limit:
        raise ValueError(f"enumeration would visit {size:,} occupancy states (limit {limit:,}); "
                         f"raw state space is {(k + 1) ** n:,}")
    exact = isinstance(pi, (Fraction, int))
    pi = Fraction(pi) if exact else float(pi)
    if not 0 <= pi <= 1:
        raise ValueError(f"pi must lie in [0, 1], got {pi!r}")
    silent, per_slot = 1 - pi, pi / k
    others = n - 1
    fact = math.factorial
    masses: dict[int, Any] = defaultdict(int)
    for combo in combinations_with_replacement(range(k + 1), others):
        counts = [0] * (k + 1)
        for c in combo:
            counts[c] += 1
        ways = fact(others)
        for c in counts:
            ways //= fact(c)
        w_others = ways * silent ** counts[0] * per_slot ** (others - counts[0])
        if w_others == 0:
            continue
        for u_slot in range(-1, k):
            w = w_others * (silent if u_slot < 0 else per_slot)
            if w == 0:
                continue
            occ = counts[1:]
            if u_slot >= 0:
                occ = occ.copy()
                occ[u_slot] += 1
            admitted = sum(1 for c in occ if c == 1)
            u_in = u_slot >= 0 and occ[u_slot] == 1
            if condition == "u_fails" and u_in or condition == "u_succeeds" and not u_in:
                continue
            masses[admitted] += w
    total = sum(masses.values())
    if total == 0:
        raise ValueError(f"conditioning event {condition!r} has probability zero")
    return Pmf.from_dict({m: v / total for m, v in masses.items()})
