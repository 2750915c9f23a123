"""Shared fixtures and scenario builders."""

from __future__ import annotations

import pytest

from peaksched import Scenario, TaskSpec
from peaksched.rng import SplitMix64, mix64


@pytest.fixture
def scenario_a() -> Scenario:
    """Two one-task robots on a 6-slot period; optimum peak 3."""
    return Scenario(period=6, robots=(
        (TaskSpec(rate=2, duration=2, gap_min=1),),
        (TaskSpec(rate=3, duration=2, gap_min=1),),
    ))


def random_raw_scenario(seed: int, max_robots: int = 3, max_tasks: int = 2,
                        min_period: int = 5, max_period: int = 10) -> Scenario:
    """Small random scenario, feasibility not guaranteed."""
    rng = SplitMix64(mix64(0xF00D, seed))
    robots = []
    for _ in range(rng.randint(1, max_robots)):
        tasks = []
        for _ in range(rng.randint(1, max_tasks)):
            gap_min = rng.randint(0, 2)
            tasks.append(TaskSpec(
                rate=float(rng.randint(1, 4)),
                duration=rng.randint(1, 3),
                gap_min=gap_min,
                gap_max=None if rng.randint(0, 3) == 0
                else gap_min + rng.randint(0, 3),
            ))
        robots.append(tuple(tasks))
    return Scenario(period=rng.randint(min_period, max_period),
                    robots=tuple(robots))
