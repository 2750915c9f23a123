"""Command-line entry point.

Subcommands: ``generate``, ``solve``, ``validate``, ``export-lp``,
``bench``.  Exit codes: 0 success, 2 invalid input, 3 infeasible scenario,
4 time limit expired without an optimality proof under ``--require-optimal``.
Summary lines go to stdout as space-separated ``key=value`` tokens;
structured artifacts only to files.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import fileio
from .baselines import solve_asap, solve_random
from .bench import (
    BenchConfig,
    dump_profiles,
    run_experiment,
    rows_csv,
    scenario_for,
    summarize,
    summary_csv,
)
from .errors import (
    CapExceeded,
    Infeasible,
    InfeasibleParams,
    SchedulingError,
    ShapeMismatch,
    UnknownExample,
    WindowEmpty,
)
from .exact import solve_exact
from .generator import BUNDLED_EXAMPLES, GenParams, bundled_example, generate
from .lp_export import export_lp
from .model import SolveReport, traffic_profile, validate_schedule
from .oracle import brute_force_optimal
from .rtwpa import RtwpaConfig, solve_rtwpa

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INFEASIBLE = 3
EXIT_NO_PROOF = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="peaksched",
        description="Peak-rate scheduling of periodic robot communication tasks.")
    parser.add_argument("--quiet", action="store_true",
                        help="suppress summary output")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate a scenario file")
    gen.add_argument("--robots", type=int)
    gen.add_argument("--tasks", type=int)
    gen.add_argument("--period", type=int, default=15)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--example", choices=BUNDLED_EXAMPLES,
                     help="emit a bundled example instead of sampling")
    gen.add_argument("--out", help="output scenario file (default: stdout)")

    slv = sub.add_parser("solve", help="schedule a scenario")
    slv.add_argument("--scenario", required=True)
    slv.add_argument("--method", required=True,
                     choices=("exact", "rtwpa", "random", "asap", "oracle"))
    slv.add_argument("--time-limit", type=float, default=None,
                     help="exact solver wall-clock limit in seconds")
    slv.add_argument("--iterations", type=int, default=1000,
                     help="rtwpa pass count")
    slv.add_argument("--seed", type=int, default=0)
    slv.add_argument("--out", help="write the schedule file here")
    slv.add_argument("--profile-out", help="write the traffic profile CSV here")
    slv.add_argument("--require-optimal", action="store_true",
                     help="exit 4 if the time limit expires without a proof")

    val = sub.add_parser("validate", help="check a schedule against a scenario")
    val.add_argument("--scenario", required=True)
    val.add_argument("--schedule", required=True)

    exp = sub.add_parser("export-lp", help="write the ILP in LP format")
    exp.add_argument("--scenario", required=True)
    exp.add_argument("--out", required=True)

    ben = sub.add_parser("bench", help="run a benchmark sweep")
    ben.add_argument("--cells",
                     help="comma-separated I:J pairs (default: full sweep)")
    ben.add_argument("--scenarios-per-cell", type=int, default=100)
    ben.add_argument("--methods", default="exact,rtwpa,random")
    ben.add_argument("--seed", type=int, default=0)
    ben.add_argument("--exact-time-limit", type=float, default=120.0)
    ben.add_argument("--rtwpa-iterations", type=int, default=1000)
    ben.add_argument("--baseline", default="random")
    ben.add_argument("--profile", action="append", default=[],
                     metavar="I:J:S",
                     help="dump per-slot profiles for this instance (repeatable)")
    ben.add_argument("--figures", action="store_true",
                     help="render PNG figures alongside the CSVs")
    ben.add_argument("--out-dir", required=True)
    return parser


def _emit(args, line: str) -> None:
    if not args.quiet:
        print(line)


def _fmt_report(report: SolveReport) -> str:
    tokens = [
        f"method={report.method}",
        f"peak={fileio.format_rate(report.peak)}",
        f"proved_optimal={str(report.proved_optimal).lower()}",
        f"runtime_ms={report.runtime * 1000.0:.3f}",
        f"nodes={report.nodes_explored}",
    ]
    if report.seed is not None:
        tokens.append(f"seed={report.seed}")
    if report.iterations is not None:
        tokens.append(f"iterations={report.iterations}")
    return " ".join(tokens)


def _cmd_generate(args) -> int:
    if args.example:
        scenario = bundled_example(args.example)
    else:
        if args.robots is None or args.tasks is None:
            raise ValueError("--robots and --tasks are required without --example")
        scenario = generate(GenParams(robots=args.robots,
                                      tasks_per_robot=args.tasks,
                                      period=args.period, seed=args.seed))
    doc = fileio.scenario_to_dict(scenario)
    if args.out:
        fileio.save_scenario(scenario, args.out)
        _emit(args, f"command=generate period={scenario.period} "
                    f"robots={len(scenario.robots)} out={args.out}")
    else:
        json.dump(doc, sys.stdout, indent=2)
        print()
    return EXIT_OK


def _cmd_solve(args) -> int:
    scenario = fileio.load_scenario(args.scenario)
    if args.method == "exact":
        report = solve_exact(scenario, time_limit=args.time_limit)
    elif args.method == "rtwpa":
        report = solve_rtwpa(scenario, RtwpaConfig(iterations=args.iterations,
                                                   seed=args.seed))
    elif args.method == "random":
        report = solve_random(scenario, seed=args.seed)
    elif args.method == "asap":
        report = solve_asap(scenario)
    else:
        import time as _time
        t0 = _time.perf_counter()
        res = brute_force_optimal(scenario)
        report = SolveReport(schedule=res.best_schedule, peak=res.best_peak,
                             method="oracle", proved_optimal=True,
                             runtime=_time.perf_counter() - t0,
                             nodes_explored=res.schedules_enumerated)
    if args.out:
        fileio.save_schedule(report.schedule, args.out)
    if args.profile_out:
        profile = traffic_profile(scenario, report.schedule)
        with open(args.profile_out, "w", encoding="utf-8") as fh:
            fh.write(fileio.profile_csv(profile))
    _emit(args, _fmt_report(report))
    if args.require_optimal and not report.proved_optimal:
        print("optimality not proved within the time limit", file=sys.stderr)
        return EXIT_NO_PROOF
    return EXIT_OK


def _cmd_validate(args) -> int:
    scenario = fileio.load_scenario(args.scenario)
    schedule = fileio.load_schedule(args.schedule)
    violations = validate_schedule(scenario, schedule)
    if violations:
        for v in violations:
            print(v, file=sys.stderr)
        _emit(args, f"command=validate valid=false violations={len(violations)}")
        return EXIT_INVALID
    _emit(args, "command=validate valid=true violations=0")
    return EXIT_OK


def _cmd_export_lp(args) -> int:
    scenario = fileio.load_scenario(args.scenario)
    doc = export_lp(scenario)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(doc)
    nvars = 2 * sum(len(r) for r in scenario.robots) * scenario.period + 1
    _emit(args, f"command=export-lp variables={nvars} out={args.out}")
    return EXIT_OK


def _parse_cells(text: Optional[str]) -> Optional[list[tuple[int, int]]]:
    if not text:
        return None
    cells = []
    for token in text.split(","):
        try:
            i, j = token.split(":")
            cells.append((int(i), int(j)))
        except ValueError:
            raise ValueError(f"bad cell spec {token!r}, expected I:J") from None
    return cells


def _cmd_bench(args) -> int:
    import os

    cells = _parse_cells(args.cells)
    methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    if cells is None:
        robot_counts = BenchConfig.robot_counts
        task_counts = BenchConfig.task_counts
        pairs = None
    else:
        robot_counts = tuple(sorted({c[0] for c in cells}))
        task_counts = tuple(sorted({c[1] for c in cells}))
        pairs = set(cells)
    config = BenchConfig(
        robot_counts=robot_counts,
        task_counts=task_counts,
        scenarios_per_cell=args.scenarios_per_cell,
        methods=methods,
        master_seed=args.seed,
        exact_time_limit=args.exact_time_limit,
        baseline_method=args.baseline,
        rtwpa_iterations=args.rtwpa_iterations,
    )
    rows = run_experiment(config)
    if pairs is not None:
        rows = [r for r in rows if (r.robots, r.tasks) in pairs]
    summary = summarize(rows, baseline=args.baseline) \
        if args.baseline in methods else []

    os.makedirs(args.out_dir, exist_ok=True)
    with open(os.path.join(args.out_dir, "rows.csv"), "w", encoding="utf-8") as fh:
        fh.write(rows_csv(rows))
    if summary:
        with open(os.path.join(args.out_dir, "summary.csv"), "w",
                  encoding="utf-8") as fh:
            fh.write(summary_csv(summary))

    for spec in args.profile:
        try:
            I, J, s = (int(x) for x in spec.split(":"))
        except ValueError:
            raise ValueError(f"bad profile spec {spec!r}, expected I:J:S") from None
        scenario = scenario_for(config, I, J, s)
        from .bench import _run_method
        reports = [_run_method(m, scenario, config, (I, J, s)) for m in methods]
        path = os.path.join(args.out_dir, f"profile_{I}_{J}_{s}.csv")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dump_profiles(scenario, reports))
        if args.figures:
            from .figures import save_profile_figure
            save_profile_figure(scenario, reports,
                                os.path.join(args.out_dir,
                                             f"profile_{I}_{J}_{s}.png"))

    if args.figures and summary:
        from .figures import save_summary_figures
        save_summary_figures(summary, args.out_dir, baseline=args.baseline)

    _emit(args, f"command=bench rows={len(rows)} out_dir={args.out_dir}")
    return EXIT_OK


_COMMANDS = {
    "generate": _cmd_generate,
    "solve": _cmd_solve,
    "validate": _cmd_validate,
    "export-lp": _cmd_export_lp,
    "bench": _cmd_bench,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (Infeasible, InfeasibleParams) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ValueError, ShapeMismatch, UnknownExample, WindowEmpty,
            CapExceeded, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SchedulingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
