"""Closed-form average AoI, transmit power and load for SA, FSA and RTA.

Every protocol is analysed through one renewal interval ``Z`` between two
successful updates of a tagged sensor ``u``; the average age is
``t_pk + E[Z^2] / (2 E[Z])`` and the average power is the expected energy
spent per interval divided by ``E[Z]``.

RTA needs the distribution of the number of sensors admitted to the access
phase.  Those distributions are mixtures of the occupancy probability
``occupancy_exactly_one`` over binomially distributed request counts.  The
occupancy values do not depend on the request probability, so they are
tabulated once per ``(N, k)`` and every evaluation over a grid of request
probabilities is a pair of matrix products.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.stats import binom

from aoi_ra.model import Protocol, TimingModel

MF_CONDITIONAL = "conditional"
MF_MIXTURE = "mixture"
_MF_FORMS = (MF_CONDITIONAL, MF_MIXTURE)
INTERVAL_INDEPENDENT = "independent"
INTERVAL_EXACT = "exact"
_INTERVAL_FORMS = (INTERVAL_INDEPENDENT, INTERVAL_EXACT)


class InfiniteAoIError(ValueError):
    """The tagged sensor never updates, so the average age diverges."""


# --------------------------------------------------------------------------
# distributions


@dataclass(frozen=True)
class Pmf:
    """Finite distribution on ``support_offset, support_offset + 1, ...``.

    ``probs`` may hold floats or :class:`fractions.Fraction` values; the
    moments keep whichever type they are given.
    """

    support_offset: int
    probs: tuple

    def __post_init__(self) -> None:
        probs = tuple(self.probs)
        object.__setattr__(self, "probs", probs)
        if not probs:
            raise ValueError("empty pmf")
        if any(p < 0 or p > 1 for p in probs):
            raise ValueError(f"probabilities outside [0, 1]: {probs}")
        total = float(sum(probs))
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"pmf sums to {total!r}")

    @property
    def support(self) -> range:
        return range(self.support_offset, self.support_offset + len(self.probs))

    def __getitem__(self, value: int):
        i = value - self.support_offset
        if 0 <= i < len(self.probs):
            return self.probs[i]
        return 0

    def mean(self):
        return sum(v * p for v, p in zip(self.support, self.probs))

    def second_moment(self):
        return sum(v * v * p for v, p in zip(self.support, self.probs))

    def variance(self):
        return self.second_moment() - self.mean() ** 2

    def as_dict(self) -> dict:
        return dict(zip(self.support, self.probs))

    @classmethod
    def from_dict(cls, masses: dict) -> "Pmf":
        lo, hi = min(masses), max(masses)
        return cls(lo, tuple(masses.get(v, 0) for v in range(lo, hi + 1)))


def _trimmed_pmf(offset: int, probs: Sequence[float]) -> Pmf:
    """Drop trailing support points whose mass is exactly zero."""
    probs = list(np.clip(probs, 0.0, 1.0))  # rounding can leave 1 + eps
    while len(probs) > 1 and probs[-1] == 0.0:
        probs.pop()
    return Pmf(offset, tuple(float(p) for p in probs))


def geometric_moments(p: float) -> tuple[float, float]:
    """Mean and second moment of a geometric variable on 1, 2, ..."""
    if not 0.0 < p <= 1.0:
        raise ValueError(f"geometric success probability must be in (0, 1], got {p!r}")
    return 1.0 / p, (2.0 - p) / (p * p)


# --------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class ProtocolReport:
    avg_aoi: float
    avg_power: float
    load: float
    mean_interval: float  # E[Z]
    p_success: float  # per round (per slot for SA)


def _check_forms(mf_form: str = MF_CONDITIONAL, interval_form: str = INTERVAL_INDEPENDENT) -> None:
    if mf_form not in _MF_FORMS:
        raise ValueError(f"mf_form must be one of {_MF_FORMS}, got {mf_form!r}")
    if interval_form not in _INTERVAL_FORMS:
        raise ValueError(f"interval_form must be one of {_INTERVAL_FORMS}, got {interval_form!r}")


def _check_prob(p: float, name: str) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {p!r}")


def _check_counts(n: int, k: int = 1) -> None:
    if n < 1:
        raise ValueError(f"need at least one sensor, got N={n}")
    if k < 1:
        raise ValueError(f"need at least one slot, got k={k}")


def sa_report(q: float, n: int, t_pk: float = 1.0, power: float = 1.0) -> ProtocolReport:
    """Slotted Aloha with per-slot transmission probability ``q``."""
    _check_prob(q, "q")
    _check_counts(n)
    ps = q * (1.0 - q) ** (n - 1)
    if ps <= 0.0:
        raise InfiniteAoIError(f"slotted Aloha never succeeds at q={q}, N={n}")
    return ProtocolReport(
        avg_aoi=(0.5 + 1.0 / ps) * t_pk,
        avg_power=q * power,
        load=q * n / t_pk,
        mean_interval=t_pk / ps,
        p_success=ps,
    )


def fsa_success_prob(omega: float, n: int, k: int) -> float:
    _check_prob(omega, "omega")
    _check_counts(n, k)
    return omega * (1.0 - omega / k) ** (n - 1)


def fsa_report(omega: float, n: int, k: int, t_pk: float = 1.0, power: float = 1.0) -> ProtocolReport:
    """Frame slotted Aloha: one attempt per ``k``-slot frame with probability ``omega``."""
    ps = fsa_success_prob(omega, n, k)
    if ps <= 0.0:
        raise InfiniteAoIError(f"frame slotted Aloha never succeeds at omega={omega}, N={n}, k={k}")
    aoi = t_pk + k * t_pk * (2.0 - ps) / (2.0 * ps) + t_pk * ps * (k * k - 1) / (12.0 * k)
    return ProtocolReport(
        avg_aoi=aoi,
        avg_power=omega * power / k,
        load=omega * n / (k * t_pk),
        mean_interval=k * t_pk / ps,
        p_success=ps,
    )


# --------------------------------------------------------------------------
# occupancy


def _check_occupancy_args(m: int, alpha: int, k: int) -> None:
    if m < 0 or alpha < 0 or k < 0:
        raise ValueError(f"occupancy arguments must be non-negative, got m={m}, alpha={alpha}, k={k}")


def occupancy_exactly_one_exact(m: int, alpha: int, k: int) -> Fraction:
    """Probability that exactly ``m`` of ``k`` boxes hold exactly one of
    ``alpha`` uniformly thrown balls, as an exact rational."""
    # numpy integers would overflow in the power terms below
    m, alpha, k = operator.index(m), operator.index(alpha), operator.index(k)
    return _occupancy(int(m), int(alpha), int(k))


@lru_cache(maxsize=None)
def _occupancy(m: int, alpha: int, k: int) -> Fraction:
    _check_occupancy_args(m, alpha, k)
    if k == 0:
        return Fraction(int(m == 0 and alpha == 0))
    top = min(k, alpha)
    if m > top:
        return Fraction(0)
    fact = math.factorial
    # common denominator k! alpha! keeps the inner sum integral
    total = 0
    for i in range(m, top + 1):
        term = (k - i) ** (alpha - i) * (fact(k) // fact(k - i)) * (fact(alpha) // fact(alpha - i)) // fact(i - m)
        total += term if i % 2 == 0 else -term
    sign = -1 if m % 2 else 1
    return Fraction(sign * total, k ** alpha * fact(m))


def occupancy_exactly_one(m: int, alpha: int, k: int) -> float:
    """Float value of :func:`occupancy_exactly_one_exact`."""
    return float(occupancy_exactly_one_exact(m, alpha, k))


# --------------------------------------------------------------------------
# RTA admitted-count distributions


class _RtaTables:
    """Occupancy mixtures for fixed ``(N, k)``; rows are counts, columns are
    the number ``alpha`` of other sensors that send a request."""

    def __init__(self, n: int, k: int) -> None:
        self.n, self.k = n, k
        self.binom_coef = np.array([[math.comb(n - 1, a)] for a in range(n)], dtype=float)
        alphas = np.arange(n)
        occ = occupancy_exactly_one
        top_f = min(k, n - 1)
        # u silent: the alpha requests spread over all k slots
        self.silent = np.array([[occ(m, a, k) for a in alphas] for m in range(top_f + 1)])
        # u sends: phi of the alpha others avoid u's slot and spread over k - 1 slots
        top_c = min(k - 1, n - 1)
        occ_rest = np.array([[occ(m, phi, k - 1) for phi in alphas] for m in range(top_c + 1)])
        avoid = binom.pmf(alphas[:, None], alphas[None, :], 1.0 - 1.0 / k)  # [phi, alpha]
        collide = np.triu(avoid, 1)  # phi < alpha: some other request shares u's slot
        self.sent_collide = occ_rest @ collide
        self.sent_any = occ_rest @ avoid
        # u admitted: every other request avoided u's slot
        self.success = occ_rest * (1.0 - 1.0 / k) ** alphas[None, :]

    def weights(self, pi: np.ndarray) -> np.ndarray:
        """Binomial(N - 1, pi) masses; direct powers stay finite for tiny pi."""
        a = np.arange(self.n)[:, None]
        with np.errstate(under="ignore"):
            return self.binom_coef * pi[None, :] ** a * (1.0 - pi[None, :]) ** (self.n - 1 - a)

    @staticmethod
    def _pad(rows: np.ndarray, size: int) -> np.ndarray:
        out = np.zeros((size,) + rows.shape[1:])
        out[: rows.shape[0]] = rows
        return out

    def mf(self, pi: np.ndarray, mf_form: str = MF_CONDITIONAL) -> np.ndarray:
        """Columns are PMFs of the admitted count in rounds where u fails."""
        w = self.weights(pi)
        size = self.silent.shape[0]
        silent = (1.0 - pi) * (self.silent @ w)
        if mf_form == MF_MIXTURE:
            return silent + pi * self._pad(self.sent_any @ w, size)
        joint = silent + pi * self._pad(self.sent_collide @ w, size)
        fail = 1.0 - pi * (1.0 - pi / self.k) ** (self.n - 1)
        with np.errstate(invalid="ignore", divide="ignore"):
            out = joint / fail
        # u can never fail (N = 1, pi = 1): the column is unused, park it at 0
        never = fail <= 0.0
        out[:, never] = 0.0
        out[0, never] = 1.0
        return out

    def ms(self, pi: np.ndarray) -> np.ndarray:
        """Columns are PMFs of (admitted count - 1) in rounds where u succeeds."""
        w = self.weights(pi)
        s = (1.0 - pi / self.k) ** (self.n - 1)
        with np.errstate(invalid="ignore", divide="ignore"):
            return (self.success @ w) / s


@lru_cache(maxsize=64)
def _rta_tables(n: int, k: int) -> _RtaTables:
    return _RtaTables(n, k)


def _rta_args(pi: float, n: int, k: int, *, need_positive: bool) -> None:
    _check_prob(pi, "pi")
    _check_counts(n, k)
    if need_positive and pi * (1.0 - pi / k) ** (n - 1) <= 0.0:
        raise InfiniteAoIError(f"the tagged sensor never updates at pi={pi}, N={n}, k={k}")


def rta_mf_pmf(pi: float, n: int, k: int, mf_form: str = MF_CONDITIONAL) -> Pmf:
    """Admitted-sensor count in a round where the tagged sensor does not update.

    ``mf_form="conditional"`` conditions on that failure exactly.
    ``mf_form="mixture"`` is the unconditioned mixture ``(1 - pi) * silent +
    pi * sent``, which counts rounds where u succeeds and leaves u out of the
    count; kept for comparison.
    """
    _check_forms(mf_form)
    _rta_args(pi, n, k, need_positive=False)
    col = _rta_tables(n, k).mf(np.array([float(pi)]), mf_form)[:, 0]
    return _trimmed_pmf(0, col)


def rta_ms_pmf(pi: float, n: int, k: int) -> Pmf:
    """Admitted-sensor count (u included) in a round where u updates."""
    _rta_args(pi, n, k, need_positive=True)
    col = _rta_tables(n, k).ms(np.array([float(pi)]))[:, 0]
    return _trimmed_pmf(1, col)


def rta_d_pmf(pi: float, n: int, k: int) -> Pmf:
    """Position of u in the access-phase TDMA order, given that u updates."""
    ms = rta_ms_pmf(pi, n, k)
    top = ms.support[-1]
    probs = [sum(ms[m] / m for m in range(d, top + 1)) for d in range(1, top + 1)]
    return _trimmed_pmf(1, probs)


@dataclass(frozen=True)
class RtaMoments:
    e_theta_f: float
    e_theta_f2: float
    e_theta_s: float
    e_theta_s2: float
    e_x: float
    e_x2: float
    e_d: float
    e_d2: float
    p_success: float
    p_request_given_fail: float
    e_ms: float
    e_ms2: float


def _rta_moment_arrays(pi: np.ndarray, n: int, k: int, t_pk: float, t_r: float,
                       mf_form: str = MF_CONDITIONAL) -> dict[str, np.ndarray]:
    tables = _rta_tables(n, k)
    mf = tables.mf(pi, mf_form)
    ms = tables.ms(pi)
    vf = np.arange(mf.shape[0])[:, None]
    vs = np.arange(1, ms.shape[0] + 1)[:, None]
    e_mf, e_mf2 = (vf * mf).sum(0), (vf * vf * mf).sum(0)
    e_ms, e_ms2 = (vs * ms).sum(0), (vs * vs * ms).sum(0)
    # D | M_S is uniform on 1..M_S
    e_d = ((vs + 1) / 2 * ms).sum(0)
    e_d2 = ((vs + 1) * (2 * vs + 1) / 6 * ms).sum(0)
    s = (1.0 - pi / k) ** (n - 1)
    ps = pi * s
    with np.errstate(divide="ignore", invalid="ignore"):
        e_x = 1.0 / ps
        e_x2 = (2.0 - ps) / (ps * ps)
        fail = 1.0 - ps
        p_req_fail = np.where(fail > 0, (pi - ps) / np.where(fail > 0, fail, 1.0), 0.0)
    head = k * t_r
    return {
        "e_theta_f": head + e_mf * t_pk,
        "e_theta_f2": head * head + t_pk * t_pk * e_mf2 + 2 * head * t_pk * e_mf,
        "e_theta_s": head + e_ms * t_pk,
        "e_theta_s2": head * head + t_pk * t_pk * e_ms2 + 2 * head * t_pk * e_ms,
        "e_x": e_x,
        "e_x2": e_x2,
        "e_d": e_d,
        "e_d2": e_d2,
        "p_success": ps,
        "p_request_given_fail": p_req_fail,
        "e_ms": e_ms,
        "e_ms2": e_ms2,
    }


def rta_moments(pi: float, n: int, k: int, t_pk: float, t_r: float,
                mf_form: str = MF_CONDITIONAL) -> RtaMoments:
    _rta_args(pi, n, k, need_positive=True)
    _check_forms(mf_form)
    arrays = _rta_moment_arrays(np.array([float(pi)]), n, k, t_pk, t_r, mf_form)
    return RtaMoments(**{name: float(v[0]) for name, v in arrays.items()})


def _rta_report_arrays(pi: np.ndarray, n: int, k: int, t_pk: float, t_r: float,
                       power: float = 1.0, mf_form: str = MF_CONDITIONAL,
                       interval_form: str = INTERVAL_INDEPENDENT):
    _check_forms(mf_form, interval_form)
    with np.errstate(invalid="ignore", divide="ignore"):
        return _rta_report_body(pi, n, k, t_pk, t_r, power, mf_form, interval_form)


def _rta_report_body(pi, n, k, t_pk, t_r, power, mf_form, interval_form):
    mo = _rta_moment_arrays(pi, n, k, t_pk, t_r, mf_form)
    e_x, e_x2 = mo["e_x"], mo["e_x2"]
    ef, ef2, es, es2 = mo["e_theta_f"], mo["e_theta_f2"], mo["e_theta_s"], mo["e_theta_s2"]
    ez = (e_x - 1) * ef + es
    ez2 = ((e_x - 1) * ef2 + (e_x2 - 3 * e_x + 2) * ef * ef + es2
           + 2 * (e_x - 1) * ef * es + 2 * (mo["e_d2"] - mo["e_d"] ** 2) * t_pk * t_pk)
    if interval_form == INTERVAL_EXACT:
        # the delivering round's length and u's position in it are correlated:
        # Cov(M_S, D) = Var(M_S) / 2
        ez2 = ez2 - (mo["e_ms2"] - mo["e_ms"] ** 2) * t_pk * t_pk
    aoi = t_pk + ez2 / (2 * ez)
    energy = mo["p_request_given_fail"] * (e_x - 1) * t_r + (t_r + t_pk)
    avg_power = energy / ez * power
    ps = mo["p_success"]
    load = n * pi / (es * ps + ef * (1 - ps))
    return aoi, avg_power, load, ez, ps


def rta_report(pi: float, n: int, k: int, t_pk: float, t_r: float, power: float = 1.0,
               mf_form: str = MF_CONDITIONAL, interval_form: str = INTERVAL_INDEPENDENT) -> ProtocolReport:
    """Request-then-access: ``k`` request slots of length ``t_r``, then a TDMA
    superframe of ``t_pk`` slots for the admitted sensors.

    ``interval_form="independent"`` builds ``E[Z^2]`` treating the delivering
    round's length as independent of u's TDMA position, which overstates it
    by ``t_pk**2 * Var(M_S)``; ``"exact"`` removes that term.
    """
    _rta_args(pi, n, k, need_positive=True)
    aoi, avg_power, load, ez, ps = (float(v[0]) for v in
                                    _rta_report_arrays(np.array([float(pi)]), n, k, t_pk, t_r, power,
                                                       mf_form, interval_form))
    return ProtocolReport(aoi, avg_power, load, ez, ps)


# --------------------------------------------------------------------------
# grid evaluation


def evaluate(protocol: Protocol | str, probs, n: int, k: int, timing: TimingModel,
             power: float = 1.0, mf_form: str = MF_CONDITIONAL,
             interval_form: str = INTERVAL_INDEPENDENT) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(avg_aoi, avg_power, load)`` arrays over an array of access probabilities.

    All probabilities must lie in (0, 1].  Points where the tagged sensor can
    never update (``q = 1`` in slotted Aloha with other sensors present) get an
    age of ``inf``; callers that expose values must screen for it.
    """
    protocol = Protocol.parse(protocol)
    p = np.atleast_1d(np.asarray(probs, dtype=float))
    if p.size == 0:
        empty = np.empty(0)
        return empty, empty.copy(), empty.copy()
    if np.any(p <= 0.0) or np.any(p > 1.0):
        raise InfiniteAoIError("access probabilities must lie in (0, 1]")
    _check_counts(n, k)
    t_pk = timing.t_pk
    if protocol is Protocol.RTA:
        aoi, avg_power, load, _, ps = _rta_report_arrays(p, n, k, t_pk, timing.t_r, power,
                                                         mf_form, interval_form)
    else:
        kk = 1 if protocol is Protocol.SA else k
        ps = p * (1.0 - p / kk) ** (n - 1)
        with np.errstate(divide="ignore", over="ignore"):
            if protocol is Protocol.SA:
                aoi = (0.5 + 1.0 / ps) * t_pk
            else:
                aoi = t_pk + kk * t_pk * (2.0 - ps) / (2.0 * ps) + t_pk * ps * (kk * kk - 1) / (12.0 * kk)
        avg_power = p * power / kk
        load = p * n / (kk * t_pk)
    aoi = np.where(ps > 0.0, aoi, np.inf)
    return aoi, avg_power, load


def report(protocol: Protocol | str, access_prob: float, n: int, k: int, timing: TimingModel,
           power: float = 1.0, mf_form: str = MF_CONDITIONAL,
           interval_form: str = INTERVAL_INDEPENDENT) -> ProtocolReport:
    """Dispatch to the per-protocol report."""
    protocol = Protocol.parse(protocol)
    if protocol is Protocol.SA:
        return sa_report(access_prob, n, timing.t_pk, power)
    if protocol is Protocol.FSA:
        return fsa_report(access_prob, n, k, timing.t_pk, power)
    return rta_report(access_prob, n, k, timing.t_pk, timing.t_r, power, mf_form, interval_form)
