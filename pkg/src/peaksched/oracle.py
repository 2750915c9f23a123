"""Exhaustive brute-force minimizer of the peak aggregate rate.

Ground truth for the exact solver and for small worked examples.  The DFS
chains start windows task by task, which enumerates exactly the set of
valid schedules, and keeps an incremental per-slot profile (add on descend,
subtract on backtrack).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import CapExceeded, Infeasible, WindowEmpty
from .model import Scenario, Schedule, compute_window, finish_slot

DEFAULT_CAP = 10_000_000


@dataclass(frozen=True)
class OracleResult:
    best_schedule: Schedule
    best_peak: float
    schedules_enumerated: int
    feasible_count: int


def _estimate_size(scenario: Scenario) -> int:
    """Upper bound on the number of leaves: product of window widths under
    the earliest-prefix walk (windows only shrink for later prefixes)."""
    est = 1
    for i, tasks in enumerate(scenario.robots):
        finish = None
        for j, spec in enumerate(tasks):
            w = compute_window(scenario, i, j, finish)
            est *= w.width
            finish = finish_slot(w.es, spec.duration)
    return est


def brute_force_optimal(scenario: Scenario, cap: int = DEFAULT_CAP) -> OracleResult:
    """Enumerate every valid schedule and return the minimum-peak one.

    Ties are broken by the lexicographically smallest flattened start vector
    (robot-major).  Raises CapExceeded when the estimated enumeration size
    exceeds ``cap`` and Infeasible when no valid schedule exists.
    """
    try:
        estimate = _estimate_size(scenario)
    except WindowEmpty:
        raise Infeasible("scenario admits no valid schedule") from None
    if estimate > cap:
        raise CapExceeded(estimate, cap)

    T = scenario.period
    flat = [(i, j, spec) for i, j, spec in scenario.tasks()]
    n = len(flat)
    profile = [0.0] * T
    starts = [0] * n
    best_starts: Optional[list[int]] = None
    best_peak = float("inf")
    count = 0

    def descend(k: int, finish_prev: Optional[int]) -> None:
        nonlocal best_starts, best_peak, count
        if k == n:
            count += 1
            peak = max(profile)
            if peak < best_peak:
                best_peak = peak
                best_starts = starts.copy()
            return
        i, j, spec = flat[k]
        try:
            w = compute_window(scenario, i, j, finish_prev if j > 0 else None)
        except WindowEmpty:
            return
        last = j == len(scenario.robots[i]) - 1
        for s in range(w.es, w.ls + 1):
            f = finish_slot(s, spec.duration)
            for t in range(s - 1, f):
                profile[t] += spec.rate
            starts[k] = s
            descend(k + 1, None if last else f)
            for t in range(s - 1, f):
                profile[t] -= spec.rate
        return

    descend(0, None)
    if best_starts is None:
        raise Infeasible("scenario admits no valid schedule")

    rows: list[tuple[int, ...]] = []
    pos = 0
    for tasks in scenario.robots:
        rows.append(tuple(best_starts[pos:pos + len(tasks)]))
        pos += len(tasks)
    return OracleResult(
        best_schedule=Schedule(tuple(rows)),
        best_peak=best_peak,
        schedules_enumerated=count,
        feasible_count=count,
    )
