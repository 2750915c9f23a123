"""Domain types and time-window algebra for periodic task scheduling.

A scenario is a set of robots, each running an ordered sequence of
communication tasks once per period of T discrete slots.  Every task has a
data rate, a duration in slots, and minimum/maximum idle-gap bounds to its
successor; the last task's minimum gap runs to the end of the period.  A
schedule assigns each task a 1-based start slot.  The objective throughout
the package is the peak aggregate rate over the period.

Slots are 1-based everywhere in the public API; robot and task indices are
0-based (ordinary Python sequence indices).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import PeriodOverflow, ShapeMismatch, WindowEmpty

__all__ = [
    "TaskSpec",
    "Scenario",
    "TimeWindow",
    "Schedule",
    "TrafficProfile",
    "Violation",
    "SolveReport",
    "finish_slot",
    "earliest_start_next",
    "latest_start_by_gap",
    "latest_start_by_period",
    "latest_start_bounds",
    "compute_window",
    "validate_schedule",
    "traffic_profile",
    "popr",
    "is_feasible",
    "asap_starts",
    "harmonize_periods",
]


@dataclass(frozen=True)
class TaskSpec:
    """One communication task: rate (Mbps by convention), duration in slots,
    and idle-gap bounds to its successor.

    ``gap_max=None`` means unbounded.  ``start_min``/``start_max`` are
    optional absolute bounds on the start slot; they are unset for ordinary
    scenarios and are used by :func:`harmonize_periods` to confine period
    replicas to their native cycle.
    """

    rate: float
    duration: int
    gap_min: int = 0
    gap_max: Optional[int] = None
    start_min: Optional[int] = None
    start_max: Optional[int] = None

    def __post_init__(self):
        if self.rate < 0:
            raise ValueError(f"rate must be nonnegative, got {self.rate}")
        if self.duration < 1:
            raise ValueError(f"duration must be >= 1, got {self.duration}")
        if self.gap_min < 0:
            raise ValueError(f"gap_min must be >= 0, got {self.gap_min}")
        if self.gap_max is not None and self.gap_max < self.gap_min:
            raise ValueError(
                f"gap_max {self.gap_max} < gap_min {self.gap_min}"
            )


@dataclass(frozen=True)
class Scenario:
    """A full problem instance: period length and per-robot task sequences.

    Robots may have unequal task counts; the uniform-count case matches the
    usual I-robots-by-J-tasks setting.
    """

    period: int
    robots: tuple[tuple[TaskSpec, ...], ...]

    def __post_init__(self):
        if self.period < 1:
            raise ValueError(f"period must be >= 1, got {self.period}")
        if not self.robots:
            raise ValueError("scenario must have at least one robot")
        object.__setattr__(self, "robots", tuple(tuple(r) for r in self.robots))
        for i, tasks in enumerate(self.robots):
            if not tasks:
                raise ValueError(f"robot {i} has no tasks")

    def tasks(self) -> Iterator[tuple[int, int, TaskSpec]]:
        """Yield (robot, task, spec) in robot-major order."""
        for i, robot in enumerate(self.robots):
            for j, spec in enumerate(robot):
                yield i, j, spec

    @property
    def total_volume(self) -> float:
        """Sum of rate * duration over all tasks."""
        return sum(t.rate * t.duration for _, _, t in self.tasks())

    @property
    def max_rate(self) -> float:
        return max(t.rate for _, _, t in self.tasks())


@dataclass(frozen=True)
class TimeWindow:
    """Inclusive range [es, ls] of admissible start slots."""

    es: int
    ls: int

    @property
    def width(self) -> int:
        return self.ls - self.es + 1


@dataclass(frozen=True)
class Schedule:
    """Start slot per (robot, task); starts[i][j] is 1-based."""

    starts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "starts", tuple(tuple(r) for r in self.starts))


@dataclass(frozen=True)
class TrafficProfile:
    """Aggregate rate per slot and its maximum."""

    per_slot: tuple[float, ...]
    peak: float


@dataclass(frozen=True)
class Violation:
    """One constraint breach found by validate_schedule."""

    robot: int
    task: int
    rule: str
    message: str

    def __str__(self) -> str:
        return f"robot {self.robot} task {self.task} [{self.rule}]: {self.message}"


@dataclass(frozen=True)
class SolveReport:
    """Result of any solver: schedule, its peak, and method metadata."""

    schedule: Schedule
    peak: float
    method: str
    proved_optimal: bool
    runtime: float
    nodes_explored: int = 0
    seed: Optional[int] = None
    iterations: Optional[int] = None


# --- window algebra -------------------------------------------------------


def finish_slot(start: int, duration: int) -> int:
    """Finishing slot of a task starting at ``start`` with ``duration`` slots."""
    return start + duration - 1


def earliest_start_next(finish_prev: int, gap_min: int) -> int:
    """Earliest start of the successor given the predecessor's finish slot."""
    return finish_prev + gap_min + 1


def latest_start_by_gap(finish_prev: int, gap_max: int) -> int:
    """Latest start of the successor allowed by the predecessor's gap_max."""
    return finish_prev + gap_max + 1


def latest_start_bounds(scenario: Scenario, robot: int) -> list[int]:
    """Per-task latest start slots for one robot, from the end-of-period chain.

    Entry j is the latest slot at which task j can start while still leaving
    room for tasks j+1.. and the trailing minimum gap within the period.
    Absolute ``start_max`` bounds are folded into the backward recursion.
    May contain values < 1 on infeasible robots.
    """
    tasks = scenario.robots[robot]
    bounds = [0] * len(tasks)
    limit = 0
    for j in range(len(tasks) - 1, -1, -1):
        t = tasks[j]
        if j == len(tasks) - 1:
            limit = scenario.period - t.gap_min - t.duration + 1
        else:
            limit = limit - t.duration - t.gap_min
        if t.start_max is not None:
            limit = min(limit, t.start_max)
        bounds[j] = limit
    return bounds


def latest_start_by_period(scenario: Scenario, robot: int, task: int) -> int:
    """Latest start of (robot, task) imposed by the end of the period."""
    return latest_start_bounds(scenario, robot)[task]


def compute_window(
    scenario: Scenario,
    robot: int,
    task: int,
    finish_prev: Optional[int] = None,
) -> TimeWindow:
    """Admissible start window for (robot, task).

    ``finish_prev`` is the finish slot of task-1 of the same robot and must
    be None exactly for the robot's first task.  Raises WindowEmpty when no
    admissible start exists.
    """
    spec = scenario.robots[robot][task]
    if task == 0:
        if finish_prev is not None:
            raise ValueError("finish_prev must be None for a robot's first task")
        es = 1
        ls = latest_start_by_period(scenario, robot, task)
    else:
        if finish_prev is None:
            raise ValueError("finish_prev required for task > 0")
        prev = scenario.robots[robot][task - 1]
        es = earliest_start_next(finish_prev, prev.gap_min)
        ls = latest_start_by_period(scenario, robot, task)
        if prev.gap_max is not None:
            ls = min(ls, latest_start_by_gap(finish_prev, prev.gap_max))
    if spec.start_min is not None:
        es = max(es, spec.start_min)
    if es > ls:
        raise WindowEmpty(robot, task, es, ls)
    return TimeWindow(es, ls)


# --- schedule checks and profiles ----------------------------------------


def _check_shape(scenario: Scenario, schedule: Schedule) -> None:
    if len(schedule.starts) != len(scenario.robots) or any(
        len(s) != len(r) for s, r in zip(schedule.starts, scenario.robots)
    ):
        raise ShapeMismatch(
            f"schedule shape {[len(s) for s in schedule.starts]} does not match "
            f"scenario shape {[len(r) for r in scenario.robots]}"
        )


def validate_schedule(scenario: Scenario, schedule: Schedule) -> list[Violation]:
    """Check a schedule against all scenario constraints.

    Returns an empty list iff the schedule is valid; otherwise one Violation
    per breach.  Raises ShapeMismatch if the schedule does not cover exactly
    the scenario's tasks.
    """
    _check_shape(scenario, schedule)
    T = scenario.period
    out: list[Violation] = []
    for i, tasks in enumerate(scenario.robots):
        starts = schedule.starts[i]
        for j, spec in enumerate(tasks):
            s = starts[j]
            f = finish_slot(s, spec.duration)
            lo = 1 if spec.start_min is None else spec.start_min
            if s < lo:
                out.append(Violation(i, j, "start_lower_bound",
                                     f"start {s} < {lo}"))
            if spec.start_max is not None and s > spec.start_max:
                out.append(Violation(i, j, "start_upper_bound",
                                     f"start {s} > {spec.start_max}"))
            if f > T:
                out.append(Violation(i, j, "finish_in_period",
                                     f"finish {f} > period {T}"))
            if j + 1 < len(tasks):
                gap = starts[j + 1] - f - 1
                if gap < spec.gap_min:
                    out.append(Violation(i, j, "gap_min",
                                         f"gap {gap} < gap_min {spec.gap_min}"))
                if spec.gap_max is not None and gap > spec.gap_max:
                    out.append(Violation(i, j, "gap_max",
                                         f"gap {gap} > gap_max {spec.gap_max}"))
            else:
                # gap_max of the last task is ignored by convention; its
                # gap_min runs to the end of the period.
                if f + spec.gap_min > T:
                    out.append(Violation(
                        i, j, "end_gap",
                        f"finish {f} + gap_min {spec.gap_min} > period {T}"))
    return out


def traffic_profile(scenario: Scenario, schedule: Schedule) -> TrafficProfile:
    """Aggregate rate per slot and its peak for a schedule.

    Defined for invalid schedules too (diagnostics); slots outside [1, T]
    are ignored.
    """
    _check_shape(scenario, schedule)
    T = scenario.period
    per_slot = [0.0] * T
    for i, j, spec in scenario.tasks():
        s = schedule.starts[i][j]
        for t in range(max(s, 1), min(finish_slot(s, spec.duration), T) + 1):
            per_slot[t - 1] += spec.rate
    return TrafficProfile(tuple(per_slot), max(per_slot))


def popr(baseline_peak: float, method_peak: float) -> float:
    """Percent of performance reduction of a method's peak versus a baseline."""
    if baseline_peak == 0:
        raise ZeroDivisionError("baseline peak is zero")
    return 100.0 * (baseline_peak - method_peak) / baseline_peak


# --- feasibility ----------------------------------------------------------


def asap_starts(scenario: Scenario) -> Schedule:
    """Every task at the earliest slot of its window (greedy forward walk).

    Raises WindowEmpty on infeasible scenarios.  By the window-nesting
    property, the walk completes iff the scenario is feasible.
    """
    all_starts = []
    for i, tasks in enumerate(scenario.robots):
        starts = []
        finish = None
        for j, spec in enumerate(tasks):
            w = compute_window(scenario, i, j, finish)
            starts.append(w.es)
            finish = finish_slot(w.es, spec.duration)
        all_starts.append(tuple(starts))
    return Schedule(tuple(all_starts))


def is_feasible(scenario: Scenario) -> bool:
    """Whether the scenario admits at least one valid schedule.

    For plain scenarios this coincides with the closed form: every robot
    satisfies sum(duration + gap_min) <= period.
    """
    try:
        asap_starts(scenario)
    except WindowEmpty:
        return False
    return True


# --- multi-period harmonization ------------------------------------------

DEFAULT_PERIOD_CAP = 100_000


def harmonize_periods(
    instances: Sequence[Scenario], period_cap: int = DEFAULT_PERIOD_CAP
) -> Scenario:
    """Merge scenarios with different periods into one over their lcm.

    Each robot's task sequence is replicated lcm/T_i times; replica c is
    confined to its native cycle [(c-1)*T_i + 1, c*T_i] via synthetic
    absolute start bounds on the replica's first and last tasks (the gap
    chain confines the tasks in between).  The inter-replica gap keeps the
    native trailing gap_min and is unbounded above.
    """
    if not instances:
        raise ValueError("no scenarios to harmonize")
    period = math.lcm(*(s.period for s in instances))
    if period > period_cap:
        raise PeriodOverflow(
            f"harmonized period {period} exceeds cap {period_cap}"
        )
    robots: list[tuple[TaskSpec, ...]] = []
    for inst in instances:
        reps = period // inst.period
        for tasks in inst.robots:
            if reps == 1:
                # native cycle equals the harmonized period; confinement to
                # [1, T] is already the global constraint
                robots.append(tasks)
                continue
            merged: list[TaskSpec] = []
            for c in range(reps):
                offset = c * inst.period
                cycle_end = offset + inst.period
                for j, t in enumerate(tasks):
                    start_min = None if t.start_min is None else t.start_min + offset
                    start_max = None if t.start_max is None else t.start_max + offset
                    gap_max = t.gap_max
                    if j == 0:
                        start_min = max(offset + 1, start_min or 1)
                    if j == len(tasks) - 1:
                        native_last = cycle_end - t.gap_min - t.duration + 1
                        start_max = native_last if start_max is None \
                            else min(start_max, native_last)
                        gap_max = None  # inter-replica gap is unbounded
                    merged.append(TaskSpec(
                        rate=t.rate, duration=t.duration, gap_min=t.gap_min,
                        gap_max=gap_max, start_min=start_min, start_max=start_max))
            robots.append(tuple(merged))
    return Scenario(period=period, robots=tuple(robots))
