"""Minmax peak-rate scheduling of periodic robot communication tasks.

Assigns start slots to each robot's task sequence so the maximum aggregate
link rate over one period is minimized: an exact branch-and-bound solver, a
randomized best-of-N heuristic, uncoordinated baselines, an LP-format model
exporter, and a seeded benchmark harness.
"""

from .baselines import solve_asap, solve_random
from .bench import (
    BenchConfig,
    BenchRow,
    SummaryRow,
    dump_profiles,
    run_experiment,
    summarize,
)
from .errors import (
    CapExceeded,
    Infeasible,
    InfeasibleParams,
    MissingBaseline,
    PeriodOverflow,
    SchedulingError,
    ShapeMismatch,
    UnknownExample,
    WindowEmpty,
)
from .exact import solve_exact, volume_lower_bound
from .generator import GenParams, bundled_example, generate
from .lp_export import export_lp
from .model import (
    Scenario,
    Schedule,
    SolveReport,
    TaskSpec,
    TimeWindow,
    TrafficProfile,
    Violation,
    compute_window,
    earliest_start_next,
    finish_slot,
    harmonize_periods,
    is_feasible,
    latest_start_by_gap,
    latest_start_by_period,
    popr,
    traffic_profile,
    validate_schedule,
)
from .oracle import OracleResult, brute_force_optimal
from .rtwpa import RtwpaConfig, solve_rtwpa

__version__ = "0.1.0"
