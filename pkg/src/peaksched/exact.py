"""Exact branch-and-bound minimization of the peak aggregate rate.

Depth-first search assigns start slots task by task through the start
windows (sound and complete by the window-nesting property).  Robots are
branched heaviest-traffic first; within a robot, tasks in sequence order.
The last robot in branch order is never branched: its minimum-peak
completion against the partial profile is computed exactly by dynamic
programming over (task, start) states.

Pruning:
  * a candidate start is skipped when the resulting partial peak cannot
    strictly improve on the incumbent;
  * whenever a robot is about to start, the volume that the remaining
    robots are forced to place inside any slot suffix [tau, T] (tasks whose
    earliest possible start is >= tau) must fit below the incumbent there,
    and symmetrically for slot prefixes via latest-finish bounds;
  * the root lower bound sharpens the volume/period floor with the same
    interval-volume argument over every slot interval, and the search stops
    as soon as the incumbent meets it.

The incumbent is warm-started with a short fixed-seed run of the randomized
scheduler, which does not affect the optimum.  With integer rates every
achievable peak is an integer, so bounds tighten to integer steps.
"""

from __future__ import annotations

import math
import time
from typing import Callable, Optional

from .errors import Infeasible
from .model import (
    Scenario,
    Schedule,
    SolveReport,
    is_feasible,
    latest_start_bounds,
    traffic_profile,
)
from .rtwpa import RtwpaConfig, solve_rtwpa

REL_TOL = 1e-9
_WARM_SEED = 0x77A12B55
_WARM_ITERATIONS = 100
_INF = float("inf")


def volume_lower_bound(scenario: Scenario) -> float:
    """Valid lower bound on any schedule's peak: the largest single rate and
    the average-rate floor total_volume / period."""
    return max(scenario.max_rate, scenario.total_volume / scenario.period)


class _RobotPlan:
    """Precompiled data for one robot in branch order."""

    __slots__ = ("index", "tasks", "volume", "es_abs", "lf_abs")

    def __init__(self, scenario: Scenario, index: int):
        self.index = index
        specs = scenario.robots[index]
        ls2 = latest_start_bounds(scenario, index)
        # (rate, duration, gap_min_prev, gap_max_prev, start_min, ls2)
        self.tasks = [
            (t.rate, t.duration,
             specs[j - 1].gap_min if j else 0,
             specs[j - 1].gap_max if j else None,
             t.start_min or 1, ls2[j])
            for j, t in enumerate(specs)
        ]
        self.volume = sum(t.rate * t.duration for t in specs)
        # absolute earliest start / latest finish per task
        self.es_abs = []
        es = 0
        for j, t in enumerate(specs):
            es = max(es + 1, t.start_min or 1) if j == 0 \
                else max(es + specs[j - 1].gap_min + 1, t.start_min or 1)
            self.es_abs.append(es)
            es = es + t.duration - 1
        self.lf_abs = [ls2[j] + specs[j].duration - 1
                       for j in range(len(specs))]


def _root_lower_bound(scenario: Scenario, plans: list[_RobotPlan],
                      integral: bool) -> float:
    """Interval-volume lower bound over every slot interval [u, v]."""
    T = scenario.period
    lb = volume_lower_bound(scenario)
    best = lb
    for u in range(1, T + 1):
        for v in range(u, T + 1):
            vol = 0.0
            for plan in plans:
                for j, (rate, dur, *_rest) in enumerate(plan.tasks):
                    if plan.es_abs[j] >= u and plan.lf_abs[j] <= v:
                        vol += rate * dur
            if vol > 0:
                best = max(best, vol / (v - u + 1))
    if integral:
        return max(scenario.max_rate, math.ceil(best - REL_TOL))
    return best


def _min_peak_dp(plan: _RobotPlan, profile: list[float], T: int,
                 threshold: float) -> tuple[float, Optional[list[int]]]:
    """Minimum completion peak of one robot against a fixed profile.

    Returns (peak, starts) or (inf, None) when no placement stays below
    ``threshold``.  The robot's own tasks never overlap each other, so the
    completion peak is the max over tasks of (profile + own rate) on the
    chosen slots, which a backward DP over (task, start) minimizes.
    """
    tasks = plan.tasks
    n = len(tasks)
    # cost[j][s-1]: peak contribution of task j starting at s, inf if the
    # task would run past the period or breach the threshold
    cost = []
    for rate, dur, _gmn, _gmx, _smin, ls2 in tasks:
        row = [_INF] * T
        for s in range(1, min(ls2, T - dur + 1) + 1):
            top = profile[s - 1]
            for t in range(s, s + dur - 1):
                if profile[t] > top:
                    top = profile[t]
            val = top + rate
            if val < threshold:
                row[s - 1] = val
        cost.append(row)

    f = [row[:] for row in cost]
    for j in range(n - 2, -1, -1):
        rate, dur, _gmn, _gmx, _smin, ls2 = tasks[j]
        _r2, _d2, gap_min, gap_max, s_min2, ls2_next = tasks[j + 1]
        nxt = f[j + 1]
        for s in range(1, ls2 + 1):
            if f[j][s - 1] == _INF:
                continue
            finish = s + dur - 1
            es = max(finish + gap_min + 1, s_min2)
            ls = ls2_next if gap_max is None \
                else min(ls2_next, finish + gap_max + 1)
            best = _INF
            for s2 in range(es, min(ls, T) + 1):
                if nxt[s2 - 1] < best:
                    best = nxt[s2 - 1]
            f[j][s - 1] = max(f[j][s - 1], best) if best < _INF else _INF

    s_min0 = tasks[0][4]
    best = _INF
    best_s = -1
    for s in range(s_min0, tasks[0][5] + 1):
        if f[0][s - 1] < best:
            best = f[0][s - 1]
            best_s = s
    if best == _INF:
        return _INF, None

    # reconstruct: at each step pick the earliest successor achieving f
    starts = [best_s]
    for j in range(n - 1):
        rate, dur, _gmn, _gmx, _smin, _ls2 = tasks[j]
        _r2, _d2, gap_min, gap_max, s_min2, ls2_next = tasks[j + 1]
        finish = starts[-1] + dur - 1
        es = max(finish + gap_min + 1, s_min2)
        ls = ls2_next if gap_max is None \
            else min(ls2_next, finish + gap_max + 1)
        target = _INF
        pick = -1
        for s2 in range(es, min(ls, T) + 1):
            if f[j + 1][s2 - 1] < target:
                target = f[j + 1][s2 - 1]
                pick = s2
        starts.append(pick)
    return best, starts


def solve_exact(scenario: Scenario,
                time_limit: Optional[float] = None,
                on_incumbent: Optional[Callable[[float], None]] = None,
                ) -> SolveReport:
    """Minimum-peak schedule, provably optimal unless the time limit expires.

    With a time limit, returns the best incumbent found and sets
    ``proved_optimal`` accordingly.  ``on_incumbent`` is called with every
    improving peak, warm start included.  Raises Infeasible when the
    scenario admits no schedule.
    """
    t0 = time.perf_counter()
    if not is_feasible(scenario):
        raise Infeasible("scenario admits no valid schedule")
    T = scenario.period
    R = len(scenario.robots)
    integral = all(float(t.rate).is_integer() for _, _, t in scenario.tasks())

    weight = [sum(t.rate * t.duration for t in tasks)
              for tasks in scenario.robots]
    order = sorted(range(R), key=lambda i: (-weight[i], i))
    plans = [_RobotPlan(scenario, i) for i in order]
    lb = _root_lower_bound(scenario, plans, integral)

    warm = solve_rtwpa(
        scenario, RtwpaConfig(iterations=_WARM_ITERATIONS, seed=_WARM_SEED))
    ub = warm.peak
    if on_incumbent is not None:
        on_incumbent(ub)
    best_by_robot: dict[int, list[int]] = {
        i: list(warm.schedule.starts[i]) for i in range(R)}

    # forced volume of robots r.. (branch order) inside slot suffix/prefix
    suffix_vol = [[0.0] * (T + 2) for _ in range(R + 1)]
    prefix_vol = [[0.0] * (T + 2) for _ in range(R + 1)]
    for r in range(R - 1, -1, -1):
        for tau in range(1, T + 1):
            suffix_vol[r][tau] = suffix_vol[r + 1][tau] + sum(
                rate * dur
                for j, (rate, dur, *_x) in enumerate(plans[r].tasks)
                if plans[r].es_abs[j] >= tau)
            prefix_vol[r][tau] = prefix_vol[r + 1][tau] + sum(
                rate * dur
                for j, (rate, dur, *_x) in enumerate(plans[r].tasks)
                if plans[r].lf_abs[j] <= tau)

    profile = [0.0] * T
    nodes = 0
    deadline = None if time_limit is None else t0 + time_limit
    timed_out = False
    current: list[list[int]] = [[] for _ in range(R)]

    def commit_incumbent(last_r: int, last_starts: list[int],
                         peak: float) -> None:
        nonlocal ub
        ub = peak
        if on_incumbent is not None:
            on_incumbent(peak)
        for r in range(last_r):
            best_by_robot[plans[r].index] = current[r][:]
        best_by_robot[plans[last_r].index] = last_starts

    def boundary_prune(r: int) -> bool:
        """True when robots r.. can no longer fit below the incumbent."""
        cap = (ub - 1.0) if integral else ub * (1.0 - REL_TOL)
        free = 0.0
        for tau in range(T, 0, -1):
            room = cap - profile[tau - 1]
            if room > 0:
                free += room
            if suffix_vol[r][tau] > free + REL_TOL:
                return True
        free = 0.0
        for tau in range(1, T + 1):
            room = cap - profile[tau - 1]
            if room > 0:
                free += room
            if prefix_vol[r][tau] > free + REL_TOL:
                return True
        # every remaining task must still have at least one start slot
        # whose occupied slots stay below the incumbent
        threshold = ub * (1.0 - REL_TOL)
        for q in range(r, R):
            plan_q = plans[q]
            for j, (rate, dur, *_x) in enumerate(plan_q.tasks):
                es = plan_q.es_abs[j]
                ls = min(plan_q.tasks[j][5], T - dur + 1)
                ok = False
                for s in range(es, ls + 1):
                    top = profile[s - 1]
                    for t in range(s, s + dur - 1):
                        if profile[t] > top:
                            top = profile[t]
                    if top + rate < threshold:
                        ok = True
                        break
                if not ok:
                    return True
        return False

    def descend(r: int, j: int, finish_prev: int, partial_peak: float) -> None:
        nonlocal nodes, timed_out
        if timed_out or ub <= lb * (1.0 + REL_TOL):
            return
        nodes += 1
        if deadline is not None and nodes % 256 == 0 \
                and time.perf_counter() > deadline:
            timed_out = True
            return
        plan = plans[r]
        if j == 0:
            if boundary_prune(r):
                return
            if r == R - 1:
                peak, starts = _min_peak_dp(plan, profile, T,
                                            ub * (1.0 - REL_TOL))
                if starts is not None and peak < ub * (1.0 - REL_TOL):
                    commit_incumbent(r, starts, max(partial_peak, peak))
                return

        rate, dur, gap_min, gap_max, s_min, ls2 = plan.tasks[j]
        if j == 0:
            es, ls = s_min, ls2
        else:
            es = max(finish_prev + gap_min + 1, s_min)
            ls = ls2 if gap_max is None else min(ls2, finish_prev + gap_max + 1)
        if es > ls:
            return

        candidates = []
        threshold = ub * (1.0 - REL_TOL)
        for s in range(es, ls + 1):
            new_peak = partial_peak
            for t in range(s - 1, s + dur - 1):
                h = profile[t] + rate
                if h > new_peak:
                    new_peak = h
            if new_peak < threshold:
                candidates.append((new_peak, s))
        candidates.sort()

        last_task = j == len(plan.tasks) - 1
        for new_peak, s in candidates:
            if new_peak >= ub * (1.0 - REL_TOL):
                continue  # incumbent may have improved mid-loop
            for t in range(s - 1, s + dur - 1):
                profile[t] += rate
            current[r].append(s)
            if last_task:
                descend(r + 1, 0, 0, new_peak)
            else:
                descend(r, j + 1, s + dur - 1, new_peak)
            current[r].pop()
            for t in range(s - 1, s + dur - 1):
                profile[t] -= rate
            if timed_out or ub <= lb * (1.0 + REL_TOL):
                break

    if R == 1:
        peak, starts = _min_peak_dp(plans[0], profile, T, ub * (1.0 - REL_TOL))
        if starts is not None:
            commit_incumbent(0, starts, peak)
    else:
        descend(0, 0, 0, 0.0)

    schedule = Schedule(tuple(tuple(best_by_robot[i]) for i in range(R)))
    peak = traffic_profile(scenario, schedule).peak
    return SolveReport(
        schedule=schedule,
        peak=peak,
        method="exact",
        proved_optimal=not timed_out,
        runtime=time.perf_counter() - t0,
        nodes_explored=nodes,
    )
