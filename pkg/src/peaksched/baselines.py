"""Uncoordinated reference schedulers.

``solve_random`` is one random feasible draw per robot (a single pass of
the randomized scheduler) and is the default denominator for peak-reduction
percentages.  ``solve_asap`` starts every task as early as its window
allows, as a deterministic stress baseline.
"""

from __future__ import annotations

import time

from .errors import Infeasible, WindowEmpty
from .model import Scenario, Schedule, SolveReport, asap_starts, traffic_profile
from .rng import SplitMix64, mix64
from .rtwpa import _Walker


def solve_random(scenario: Scenario, seed: int = 0) -> SolveReport:
    """One uncoordinated random draw within the start windows.

    Uses the same sub-generator as pass 0 of :func:`~peaksched.rtwpa.solve_rtwpa`
    with the same seed, so a best-of-N run always dominates its own first draw.
    """
    t0 = time.perf_counter()
    rng = SplitMix64(mix64(seed, 0))
    try:
        starts, peak = _Walker(scenario).random_pass(rng)
    except WindowEmpty as exc:
        raise Infeasible(str(exc)) from exc
    return SolveReport(
        schedule=Schedule(tuple(tuple(r) for r in starts)),
        peak=peak,
        method="random",
        proved_optimal=False,
        runtime=time.perf_counter() - t0,
        seed=seed,
        iterations=1,
    )


def solve_asap(scenario: Scenario) -> SolveReport:
    """Every task at the earliest admissible slot; deterministic."""
    t0 = time.perf_counter()
    try:
        schedule = asap_starts(scenario)
    except WindowEmpty as exc:
        raise Infeasible(str(exc)) from exc
    profile = traffic_profile(scenario, schedule)
    return SolveReport(
        schedule=schedule,
        peak=profile.peak,
        method="asap",
        proved_optimal=False,
        runtime=time.perf_counter() - t0,
    )
