"""Access probabilities that minimise the analytic average age, with and
without an average transmit-power budget.

Search is a dense grid over (0, 1] followed by local refinement: golden
section for interior minima, and a boundary search where the power budget
cuts the grid.  Ties go to the smaller probability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from aoi_ra.analytic import (
    INTERVAL_INDEPENDENT,
    MF_CONDITIONAL,
    InfiniteAoIError,
    evaluate,
)
from aoi_ra.model import Protocol, TimingModel

DEFAULT_GRID = 10_000
PROB_TOL = 1e-8
POWER_SLACK = 1e-9
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class InfeasibleBudgetError(ValueError):
    """No access probability meets the power budget."""


@dataclass(frozen=True)
class FrontierPoint:
    power_budget: float
    best_prob: float
    min_aoi: float
    binding: bool
    avg_power: float


@dataclass(frozen=True)
class SweepRow:
    access_prob: float
    load: float
    avg_aoi: float
    avg_power: float


def golden_section(f: Callable[[float], float], lo: float, hi: float, tol: float = PROB_TOL) -> tuple[float, float]:
    """Minimise a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


class _Problem:
    """One ``(protocol, N, k, timing)`` objective with its grid evaluated once."""

    def __init__(self, protocol, n: int, k: int, timing: TimingModel, power: float,
                 grid_points: int, mf_form: str, interval_form: str) -> None:
        self.protocol = Protocol.parse(protocol)
        self.n = n
        self.k = 1 if self.protocol is Protocol.SA else k
        self.timing = timing
        self.power = power
        self.forms = {"mf_form": mf_form, "interval_form": interval_form}
        self.grid = np.arange(1, grid_points + 1) / grid_points
        self.aoi, self.pw, _ = self.evaluate(self.grid)
        self._unconstrained: tuple[float, float, float] | None = None

    def evaluate(self, probs):
        return evaluate(self.protocol, probs, self.n, self.k, self.timing, self.power, **self.forms)

    def aoi_at(self, p: float) -> float:
        return float(self.evaluate([p])[0][0])

    def power_at(self, p: float) -> float:
        return float(self.evaluate([p])[1][0])

    def _refine(self, i: int, mask: np.ndarray | None = None) -> tuple[float, float]:
        """Golden-section around grid index ``i``; keeps the grid point unless beaten."""
        g = self.grid
        lo = g[i - 1] if i > 0 else g[0] / 2
        hi = g[i + 1] if i + 1 < g.size else g[i]
        best = (float(g[i]), float(self.aoi[i]))
        if mask is not None and not ((i == 0 or mask[i - 1]) and (i + 1 == g.size or mask[i + 1])):
            return best
        x, fx = golden_section(self.aoi_at, float(lo), float(hi))
        if fx < best[1] and (mask is None or self.power_at(x) <= self.budget_abs + POWER_SLACK * self.power):
            return x, fx
        return best

    def unconstrained(self) -> tuple[float, float, float]:
        if self._unconstrained is None:
            i = int(np.argmin(self.aoi))
            if not np.isfinite(self.aoi[i]):
                raise InfiniteAoIError("average age is infinite on the whole grid")
            self.budget_abs = math.inf
            p, a = self._refine(i)
            self._unconstrained = (p, a, self.power_at(p))
        return self._unconstrained

    def _boundary(self, p_ok: float, p_bad: float) -> float:
        """Largest feasible point between a feasible and an infeasible probability."""
        if self.protocol is not Protocol.RTA:
            # power is linear: omega * P / k
            return min(1.0, self.k * self.budget_abs / self.power)
        for _ in range(200):
            if abs(p_bad - p_ok) <= 1e-14:
                break
            mid = 0.5 * (p_ok + p_bad)
            if self.power_at(mid) <= self.budget_abs:
                p_ok = mid
            else:
                p_bad = mid
        return p_ok

    def constrained(self, budget: float) -> FrontierPoint:
        if not budget > 0:
            raise InfeasibleBudgetError(f"power budget must be positive, got {budget!r}")
        p0, a0, w0 = self.unconstrained()
        self.budget_abs = budget * self.power
        if w0 <= self.budget_abs:
            return FrontierPoint(budget, p0, a0, False, w0 / self.power)

        feasible = self.pw <= self.budget_abs
        candidates: list[tuple[float, float, bool]] = []
        if feasible.any():
            masked = np.where(feasible, self.aoi, np.inf)
            i = int(np.argmin(masked))
            if np.isfinite(masked[i]):
                p, a = self._refine(i, feasible)
                candidates.append((a, p, False))
        # every place the budget cuts the grid, including the stretch below the first point
        edges = np.flatnonzero(feasible[:-1] != feasible[1:])
        pairs = [(self.grid[j], self.grid[j + 1]) if feasible[j] else (self.grid[j + 1], self.grid[j])
                 for j in edges]
        if not feasible[0]:
            tiny = 1e-12
            if self.power_at(tiny) <= self.budget_abs:
                pairs.append((tiny, self.grid[0]))
        for p_ok, p_bad in pairs:
            p = self._boundary(float(p_ok), float(p_bad))
            if p <= 0:
                continue
            a = self.aoi_at(p)
            if np.isfinite(a):
                candidates.append((a, p, True))
        if not candidates:
            raise InfeasibleBudgetError(f"no access probability meets a power budget of {budget}P")
        a, p, at_edge = min(candidates, key=lambda c: (c[0], c[1]))
        w = self.power_at(p)
        binding = at_edge or abs(w - self.budget_abs) <= 1e-9 * self.power
        return FrontierPoint(budget, p, a, binding, w / self.power)


def _problem(protocol, n, k, timing, power, grid_points, mf_form, interval_form) -> _Problem:
    return _Problem(protocol, n, k, timing or TimingModel.normalized(), power, grid_points, mf_form, interval_form)


def min_aoi_unconstrained(protocol, n: int, k: int = 1, timing: TimingModel | None = None,
                          power: float = 1.0, *, grid_points: int = DEFAULT_GRID,
                          mf_form: str = MF_CONDITIONAL,
                          interval_form: str = INTERVAL_INDEPENDENT) -> tuple[float, float]:
    """``(best_prob, min_aoi)`` over access probabilities in (0, 1]."""
    p, a, _ = _problem(protocol, n, k, timing, power, grid_points, mf_form, interval_form).unconstrained()
    return p, a


def min_aoi_given_power(protocol, n: int, k: int = 1, timing: TimingModel | None = None,
                        power: float = 1.0, budget: float = 1.0, *, grid_points: int = DEFAULT_GRID,
                        mf_form: str = MF_CONDITIONAL,
                        interval_form: str = INTERVAL_INDEPENDENT) -> FrontierPoint:
    """Minimum average age subject to average power at most ``budget`` (units of P)."""
    return _problem(protocol, n, k, timing, power, grid_points, mf_form, interval_form).constrained(budget)


def frontier(protocol, n: int, k: int = 1, timing: TimingModel | None = None, power: float = 1.0,
             budgets: Iterable[float] = (), *, grid_points: int = DEFAULT_GRID,
             mf_form: str = MF_CONDITIONAL, interval_form: str = INTERVAL_INDEPENDENT) -> list[FrontierPoint]:
    """Minimum age for each budget in an ascending sequence.

    A larger budget never does worse than a smaller one, since the smaller
    budget's optimum stays feasible; that is enforced point to point.
    """
    budgets = [float(b) for b in budgets]
    if any(b <= 0 for b in budgets):
        raise InfeasibleBudgetError("power budgets must be positive")
    if any(b2 < b1 for b1, b2 in zip(budgets, budgets[1:])):
        raise ValueError("power budgets must be ascending")
    prob = _problem(protocol, n, k, timing, power, grid_points, mf_form, interval_form)
    points: list[FrontierPoint] = []
    for b in budgets:
        pt = prob.constrained(b)
        if points and pt.min_aoi > points[-1].min_aoi:
            prev = points[-1]
            pt = FrontierPoint(b, prev.best_prob, prev.min_aoi, False, prev.avg_power)
        points.append(pt)
    assert all(q.min_aoi <= p.min_aoi for p, q in zip(points, points[1:]))
    return points


def sweep(protocol, n: int, k: int = 1, timing: TimingModel | None = None, power: float = 1.0,
          probs: Sequence[float] = (), *, mf_form: str = MF_CONDITIONAL,
          interval_form: str = INTERVAL_INDEPENDENT) -> list[SweepRow]:
    """Analytic load, age and power at each access probability."""
    probs = [float(p) for p in probs]
    if not probs:
        return []
    protocol = Protocol.parse(protocol)
    kk = 1 if protocol is Protocol.SA else k
    aoi, pw, load = evaluate(protocol, probs, n, kk, timing or TimingModel.normalized(), power,
                             mf_form=mf_form, interval_form=interval_form)
    bad = [p for p, a in zip(probs, aoi) if not np.isfinite(a)]
    if bad:
        raise InfiniteAoIError(f"average age is infinite at access probabilities {bad}")
    return [SweepRow(p, float(l), float(a), float(w)) for p, l, a, w in zip(probs, load, aoi, pw)]
