"""Seeded random scenario generation and bundled example scenarios.

The default parameter ranges follow the standard simulation setup: period
15, rates uniform in [1, 4] Mbps, durations in [1, 3] slots, minimum gap 1,
maximum gap in [3, 5].  Sampling order is fixed (robot-major, per task:
rate, duration, gap_max) so a seed pins the entire scenario.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InfeasibleParams, UnknownExample
from .model import Scenario, TaskSpec, is_feasible
from .rng import SplitMix64


@dataclass(frozen=True)
class GenParams:
    robots: int
    tasks_per_robot: int
    period: int = 15
    rate_range: tuple[int, int] = (1, 4)
    duration_range: tuple[int, int] = (1, 3)
    gap_min: int = 1
    gap_max_range: tuple[int, int] = (3, 5)
    seed: int = 0
    real_rates: bool = False

    def __post_init__(self):
        if self.robots < 1 or self.tasks_per_robot < 1:
            raise ValueError("robots and tasks_per_robot must be >= 1")
        for name in ("rate_range", "duration_range", "gap_max_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name} low {lo} > high {hi}")
        if self.gap_min < 0:
            raise ValueError("gap_min must be >= 0")
        if self.gap_max_range[0] < self.gap_min:
            raise ValueError("gap_max_range low must be >= gap_min")


MAX_REJECTIONS = 1000


def generate(params: GenParams) -> Scenario:
    """Sample a feasible scenario; resample on infeasibility.

    Rates are integer-uniform by default (``real_rates=True`` switches to
    continuous uniform).  Raises InfeasibleParams when 1000 consecutive
    samples come out infeasible.
    """
    rng = SplitMix64(params.seed)
    for _ in range(MAX_REJECTIONS):
        robots = []
        for _ in range(params.robots):
            tasks = []
            for _ in range(params.tasks_per_robot):
                if params.real_rates:
                    rate = rng.uniform(*params.rate_range)
                else:
                    rate = float(rng.randint(*params.rate_range))
                duration = rng.randint(*params.duration_range)
                gap_max = rng.randint(*params.gap_max_range)
                tasks.append(TaskSpec(rate=rate, duration=duration,
                                      gap_min=params.gap_min, gap_max=gap_max))
            robots.append(tuple(tasks))
        scenario = Scenario(period=params.period, robots=tuple(robots))
        if is_feasible(scenario):
            return scenario
    worst = params.tasks_per_robot * (params.duration_range[1] + params.gap_min)
    raise InfeasibleParams(
        f"no feasible scenario in {MAX_REJECTIONS} samples: per-robot demand "
        f"up to {worst} slots against period {params.period}"
    )


def bundled_example(name: str) -> Scenario:
    """Hand-written example scenarios shipped with the package."""
    if name != "welding_palletiser":
        raise UnknownExample(f"unknown example {name!r}")
    # Two industrial cells on 1-second slots over a 60 s cycle.
    #
    # The welder alternates a 10 s weld pass (seam tracker + logging,
    # 0.65 Mbps) with a 5 s QA scan (65 Mbps); its windows are all
    # singletons, so welds occupy slots 1-10 and 16-25 and QA scans slots
    # 11-15 and 26-30.  The palletiser travels for 10 s (no extra data) and
    # then packs for 5 s under computer vision (65 Mbps); its slack lets the
    # pack start anywhere in slots 11-21.  Packing as early as possible
    # collides with the first QA scan (130 Mbps aggregate); the optimum
    # slides the pack into the second weld pass (65.65 Mbps).
    #
    # The constant telemetry floor (~0.05-0.1 Mbps) is omitted: a uniform
    # additive offset shifts every profile equally and never changes which
    # schedule is optimal.
    welder = (
        TaskSpec(rate=0.65, duration=10, gap_min=0, gap_max=0),
        TaskSpec(rate=65.0, duration=5, gap_min=0, gap_max=0),
        TaskSpec(rate=0.65, duration=10, gap_min=0, gap_max=0),
        TaskSpec(rate=65.0, duration=5, gap_min=30),
    )
    palletiser = (
        TaskSpec(rate=0.0, duration=10, gap_min=0, gap_max=30),
        TaskSpec(rate=65.0, duration=5, gap_min=35),
    )
    return Scenario(period=60, robots=(welder, palletiser))


BUNDLED_EXAMPLES = ("welding_palletiser",)
