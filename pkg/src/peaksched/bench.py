"""Benchmark harness: seeded sweeps over (robots, tasks) cells.

For every cell and scenario index the harness generates one scenario and
feeds the identical scenario to every requested method, so per-scenario
peak-reduction ratios are paired.  All seeds derive from one master seed
through the fixed avalanche hash in :mod:`peaksched.rng`: scenario seed
``mix64(master, I, J, s, 0)``, heuristic seed ``mix64(master, I, J, s, 1)``,
random-baseline seed ``mix64(master, I, J, s, 2)``.  Output rows are
ordered by (robots, tasks, scenario, method) regardless of how the work was
scheduled.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .baselines import solve_asap, solve_random
from .errors import MissingBaseline, SchedulingError
from .exact import solve_exact
from .fileio import format_rate
from .generator import GenParams, generate
from .model import Scenario, SolveReport, popr, traffic_profile
from .oracle import brute_force_optimal
from .rng import mix64
from .rtwpa import RtwpaConfig, solve_rtwpa

DEFAULT_ROBOT_COUNTS = (2, 4, 6, 8, 10)
DEFAULT_TASK_COUNTS = (1, 2, 3)
DEFAULT_METHODS = ("exact", "rtwpa", "random")


@dataclass(frozen=True)
class BenchConfig:
    robot_counts: tuple[int, ...] = DEFAULT_ROBOT_COUNTS
    task_counts: tuple[int, ...] = DEFAULT_TASK_COUNTS
    scenarios_per_cell: int = 100
    methods: tuple[str, ...] = DEFAULT_METHODS
    master_seed: int = 0
    exact_time_limit: Optional[float] = 120.0
    baseline_method: str = "random"
    rtwpa_iterations: int = 1000
    period: int = 15

    def __post_init__(self):
        if self.scenarios_per_cell < 1:
            raise ValueError("scenarios_per_cell must be >= 1")
        unknown = set(self.methods) - set(_SOLVERS)
        if unknown:
            raise ValueError(f"unknown methods: {sorted(unknown)}")


@dataclass(frozen=True)
class BenchRow:
    robots: int
    tasks: int
    scenario_id: int
    method: str
    peak: float
    runtime_ms: float
    proved_optimal: bool


@dataclass(frozen=True)
class SummaryRow:
    robots: int
    tasks: int
    method: str
    mean_peak: float
    mean_popr: float
    mean_runtime_ms: float


def _run_method(method: str, scenario: Scenario, config: BenchConfig,
                seed_tuple: tuple[int, int, int]) -> SolveReport:
    I, J, s = seed_tuple
    if method == "exact":
        return solve_exact(scenario, time_limit=config.exact_time_limit)
    if method == "rtwpa":
        seed = mix64(config.master_seed, I, J, s, 1)
        return solve_rtwpa(scenario, RtwpaConfig(
            iterations=config.rtwpa_iterations, seed=seed))
    if method == "random":
        seed = mix64(config.master_seed, I, J, s, 2)
        return solve_random(scenario, seed=seed)
    if method == "asap":
        return solve_asap(scenario)
    if method == "oracle":
        t0 = time.perf_counter()
        res = brute_force_optimal(scenario)
        return SolveReport(schedule=res.best_schedule, peak=res.best_peak,
                           method="oracle", proved_optimal=True,
                           runtime=time.perf_counter() - t0,
                           nodes_explored=res.schedules_enumerated)
    raise ValueError(f"unknown method {method!r}")


_SOLVERS = ("exact", "rtwpa", "random", "asap", "oracle")


def scenario_for(config: BenchConfig, robots: int, tasks: int,
                 scenario_id: int) -> Scenario:
    """The scenario a sweep run uses for one (cell, index) pair."""
    seed = mix64(config.master_seed, robots, tasks, scenario_id, 0)
    return generate(GenParams(robots=robots, tasks_per_robot=tasks,
                              period=config.period, seed=seed))


def run_experiment(
    config: BenchConfig,
    progress: Optional[Callable[[BenchRow], None]] = None,
) -> list[BenchRow]:
    """Run every requested method on every seeded scenario of every cell."""
    rows: list[BenchRow] = []
    for I in config.robot_counts:
        for J in config.task_counts:
            for s in range(1, config.scenarios_per_cell + 1):
                scenario = scenario_for(config, I, J, s)
                for method in config.methods:
                    try:
                        report = _run_method(method, scenario, config, (I, J, s))
                    except SchedulingError as exc:
                        raise type(exc)(
                            f"cell I={I} J={J} scenario {s}: {exc}") from exc
                    row = BenchRow(
                        robots=I, tasks=J, scenario_id=s, method=method,
                        peak=report.peak,
                        runtime_ms=report.runtime * 1000.0,
                        proved_optimal=report.proved_optimal,
                    )
                    rows.append(row)
                    if progress is not None:
                        progress(row)
    return rows


def summarize(rows: Sequence[BenchRow], baseline: str,
              exclude_unproved: bool = False) -> list[SummaryRow]:
    """Per-(cell, method) means; peak reduction paired per scenario.

    ``exclude_unproved`` drops rows where a method failed to prove
    optimality (and their pairings) from that method's averages.
    """
    base_peaks: dict[tuple[int, int, int], float] = {}
    for row in rows:
        if row.method == baseline:
            base_peaks[(row.robots, row.tasks, row.scenario_id)] = row.peak

    cells: dict[tuple[int, int, str], list[BenchRow]] = {}
    for row in rows:
        cells.setdefault((row.robots, row.tasks, row.method), []).append(row)

    out: list[SummaryRow] = []
    for (I, J, method), cell_rows in sorted(cells.items()):
        if exclude_unproved:
            cell_rows = [r for r in cell_rows if r.proved_optimal] \
                or cell_rows
        poprs = []
        for r in cell_rows:
            key = (r.robots, r.tasks, r.scenario_id)
            if key not in base_peaks:
                raise MissingBaseline(
                    f"no {baseline} row for cell I={I} J={J} "
                    f"scenario {r.scenario_id}")
            if method == baseline:
                poprs.append(0.0)
            else:
                poprs.append(popr(base_peaks[key], r.peak))
        out.append(SummaryRow(
            robots=I, tasks=J, method=method,
            mean_peak=sum(r.peak for r in cell_rows) / len(cell_rows),
            mean_popr=sum(poprs) / len(poprs),
            mean_runtime_ms=sum(r.runtime_ms for r in cell_rows) / len(cell_rows),
        ))
    return out


def dump_profiles(scenario: Scenario, reports: Sequence[SolveReport]) -> str:
    """CSV with one aggregate-rate column per method, rows t = 1..T."""
    profiles = []
    for report in reports:
        profiles.append(traffic_profile(scenario, report.schedule))
    header = "slot," + ",".join(r.method for r in reports)
    lines = [header]
    for t in range(scenario.period):
        cells = ",".join(format_rate(p.per_slot[t]) for p in profiles)
        lines.append(f"{t + 1},{cells}")
    return "\n".join(lines) + "\n"


def rows_csv(rows: Sequence[BenchRow]) -> str:
    lines = ["robots,tasks,scenario_id,method,peak,runtime_ms,proved_optimal"]
    for r in rows:
        lines.append(
            f"{r.robots},{r.tasks},{r.scenario_id},{r.method},"
            f"{format_rate(r.peak)},{r.runtime_ms:.3f},"
            f"{str(r.proved_optimal).lower()}")
    return "\n".join(lines) + "\n"


def summary_csv(rows: Sequence[SummaryRow]) -> str:
    lines = ["robots,tasks,method,mean_peak,mean_popr,mean_runtime_ms"]
    for r in rows:
        lines.append(
            f"{r.robots},{r.tasks},{r.method},{r.mean_peak:.6g},"
            f"{r.mean_popr:.6g},{r.mean_runtime_ms:.3f}")
    return "\n".join(lines) + "\n"
