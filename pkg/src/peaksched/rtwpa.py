"""Randomized best-of-N scheduling within start windows.

Each pass walks robots and tasks in order, computes the admissible start
window for the task at hand (first task: slot 1 up to the end-of-period
chain bound; later tasks: predecessor finish plus gap bounds, capped by the
same chain bound), draws the start uniformly at random from the window, and
records the resulting peak.  The minimum-peak pass wins, ties going to the
lowest pass index.

Pass p draws from its own SplitMix64 sub-generator seeded with
``mix64(seed, p)``, so the first N passes of a longer run are identical to
an N-pass run: the best-of-N peak is nonincreasing in N for a fixed seed,
and passes could run in any order (or concurrently) with the same result.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .errors import Infeasible, WindowEmpty
from .model import Scenario, Schedule, SolveReport, latest_start_bounds
from .rng import SplitMix64, mix64

DEFAULT_ITERATIONS = 1000


@dataclass(frozen=True)
class RtwpaConfig:
    iterations: int = DEFAULT_ITERATIONS
    seed: int = 0

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")


class _Walker:
    """Precompiled per-robot data for fast repeated random passes."""

    def __init__(self, scenario: Scenario):
        self.period = scenario.period
        self.robots = []
        for i, tasks in enumerate(scenario.robots):
            ls2 = latest_start_bounds(scenario, i)
            self.robots.append([
                (t.rate, t.duration, t.gap_min, t.gap_max,
                 t.start_min or 1, ls2[j])
                for j, t in enumerate(tasks)
            ])

    def random_pass(self, rng: SplitMix64) -> tuple[list[list[int]], float]:
        """One full random draw; returns (starts, peak).

        Raises WindowEmpty on the first task whose window is empty.
        """
        profile = [0.0] * self.period
        all_starts = []
        for i, tasks in enumerate(self.robots):
            starts = []
            finish = 0
            gap_min = gap_max = None
            for j, (rate, dur, g_min, g_max, s_min, ls2) in enumerate(tasks):
                if j == 0:
                    es = s_min
                    ls = ls2
                else:
                    es = max(finish + gap_min + 1, s_min)
                    ls = ls2 if gap_max is None \
                        else min(ls2, finish + gap_max + 1)
                if es > ls:
                    raise WindowEmpty(i, j, es, ls)
                s = es if es == ls else rng.randint(es, ls)
                finish = s + dur - 1
                gap_min, gap_max = g_min, g_max
                starts.append(s)
                for t in range(s - 1, finish):
                    profile[t] += rate
            all_starts.append(starts)
        return all_starts, max(profile)


def solve_rtwpa(scenario: Scenario, config: RtwpaConfig = RtwpaConfig()) -> SolveReport:
    """Best of ``config.iterations`` independent random passes."""
    t0 = time.perf_counter()
    walker = _Walker(scenario)
    best_starts = None
    best_peak = float("inf")
    for p in range(config.iterations):
        rng = SplitMix64(mix64(config.seed, p))
        try:
            starts, peak = walker.random_pass(rng)
        except WindowEmpty as exc:
            raise Infeasible(str(exc)) from exc
        if peak < best_peak:
            best_peak = peak
            best_starts = starts
    schedule = Schedule(tuple(tuple(r) for r in best_starts))
    return SolveReport(
        schedule=schedule,
        peak=best_peak,
        method="rtwpa",
        proved_optimal=False,
        runtime=time.perf_counter() - t0,
        seed=config.seed,
        iterations=config.iterations,
    )
