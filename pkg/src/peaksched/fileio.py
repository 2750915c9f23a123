"""JSON scenario/schedule files and CSV profile output.

Scenario files look like::

    {"period": 15,
     "robots": [{"tasks": [{"rate": 3.0, "duration": 2,
                            "gap_min": 1, "gap_max": 4}]}]}

``gap_max`` may be omitted (unbounded); it is ignored on a robot's last
task either way.  ``start_min``/``start_max`` are optional absolute start
bounds written only for period-harmonized scenarios.  Schedule files are
``{"starts": [[1, 6, 11], [2, 7, 12]]}`` with 1-based slots, outer index =
robot, inner = task.
"""

from __future__ import annotations

import json
from typing import Any

from .model import Scenario, Schedule, TaskSpec, TrafficProfile


def scenario_to_dict(scenario: Scenario) -> dict[str, Any]:
    robots = []
    for tasks in scenario.robots:
        out = []
        for t in tasks:
            d: dict[str, Any] = {"rate": t.rate, "duration": t.duration,
                                 "gap_min": t.gap_min}
            if t.gap_max is not None:
                d["gap_max"] = t.gap_max
            if t.start_min is not None:
                d["start_min"] = t.start_min
            if t.start_max is not None:
                d["start_max"] = t.start_max
            out.append(d)
        robots.append({"tasks": out})
    return {"period": scenario.period, "robots": robots}


def scenario_from_dict(data: dict[str, Any]) -> Scenario:
    try:
        period = int(data["period"])
        robots = []
        for robot in data["robots"]:
            tasks = []
            for t in robot["tasks"]:
                tasks.append(TaskSpec(
                    rate=float(t["rate"]),
                    duration=int(t["duration"]),
                    gap_min=int(t.get("gap_min", 0)),
                    gap_max=None if t.get("gap_max") is None else int(t["gap_max"]),
                    start_min=None if t.get("start_min") is None else int(t["start_min"]),
                    start_max=None if t.get("start_max") is None else int(t["start_max"]),
                ))
            robots.append(tuple(tasks))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed scenario document: {exc}") from exc
    return Scenario(period=period, robots=tuple(robots))


def schedule_to_dict(schedule: Schedule) -> dict[str, Any]:
    return {"starts": [list(r) for r in schedule.starts]}


def schedule_from_dict(data: dict[str, Any]) -> Schedule:
    try:
        starts = tuple(tuple(int(s) for s in row) for row in data["starts"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed schedule document: {exc}") from exc
    return Schedule(starts)


def load_scenario(path: str) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return scenario_from_dict(json.load(fh))


def save_scenario(scenario: Scenario, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario_to_dict(scenario), fh, indent=2)
        fh.write("\n")


def load_schedule(path: str) -> Schedule:
    with open(path, encoding="utf-8") as fh:
        return schedule_from_dict(json.load(fh))


def save_schedule(schedule: Schedule, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(schedule_to_dict(schedule), fh, indent=2)
        fh.write("\n")


def format_rate(v: float) -> str:
    """Stable numeric formatting for CSV cells (integers without a dot)."""
    if float(v).is_integer():
        return str(int(v))
    return f"{v:.12g}"


def profile_csv(profile: TrafficProfile) -> str:
    lines = ["slot,aggregate_rate"]
    for t, rate in enumerate(profile.per_slot, start=1):
        lines.append(f"{t},{format_rate(rate)}")
    return "\n".join(lines) + "\n"
