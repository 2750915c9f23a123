import re

import pytest

from peaksched import MissingBaseline, popr, traffic_profile
from peaksched.bench import (
    BenchConfig,
    BenchRow,
    dump_profiles,
    rows_csv,
    run_experiment,
    scenario_for,
    summarize,
    summary_csv,
)
from peaksched.baselines import solve_asap, solve_random


SMALL = BenchConfig(robot_counts=(2,), task_counts=(2,), scenarios_per_cell=3,
                    rtwpa_iterations=50, exact_time_limit=None)


def test_row_layout_and_dominance():
    rows = run_experiment(SMALL)
    assert len(rows) == 9  # 3 scenarios x 3 methods
    assert [r.method for r in rows[:3]] == ["exact", "rtwpa", "random"]
    assert [r.scenario_id for r in rows] == [1, 1, 1, 2, 2, 2, 3, 3, 3]
    for s in (1, 2, 3):
        by = {r.method: r for r in rows if r.scenario_id == s}
        assert by["exact"].proved_optimal
        assert by["exact"].peak <= by["rtwpa"].peak + 1e-12
        assert by["rtwpa"].peak <= by["random"].peak + 1e-12


def test_reproducible_up_to_runtime():
    def strip(rows):
        return [(r.robots, r.tasks, r.scenario_id, r.method, r.peak,
                 r.proved_optimal) for r in rows]
    assert strip(run_experiment(SMALL)) == strip(run_experiment(SMALL))


def test_scenario_shared_across_methods():
    sc = scenario_for(SMALL, 2, 2, 1)
    assert sc == scenario_for(SMALL, 2, 2, 1)
    assert sc != scenario_for(SMALL, 2, 2, 2)


def test_progress_callback():
    seen = []
    rows = run_experiment(SMALL, progress=seen.append)
    assert seen == rows


def test_config_validation():
    with pytest.raises(ValueError):
        BenchConfig(scenarios_per_cell=0)
    with pytest.raises(ValueError):
        BenchConfig(methods=("exact", "magic"))


def test_summarize_popr_pairing():
    rows = [
        BenchRow(2, 1, 1, "random", 22.0, 1.0, False),
        BenchRow(2, 1, 1, "exact", 12.0, 2.0, True),
        BenchRow(2, 1, 2, "random", 10.0, 1.0, False),
        BenchRow(2, 1, 2, "exact", 10.0, 2.0, True),
    ]
    summary = {s.method: s for s in summarize(rows, baseline="random")}
    assert summary["exact"].mean_popr == pytest.approx(
        (popr(22, 12) + popr(10, 10)) / 2)
    assert summary["exact"].mean_peak == pytest.approx(11.0)
    assert summary["random"].mean_popr == 0.0


def test_summarize_exclude_unproved():
    rows = [
        BenchRow(2, 1, 1, "random", 20.0, 1.0, False),
        BenchRow(2, 1, 1, "exact", 10.0, 2.0, True),
        BenchRow(2, 1, 2, "random", 20.0, 1.0, False),
        BenchRow(2, 1, 2, "exact", 20.0, 2.0, False),
    ]
    kept = {s.method: s for s in summarize(rows, "random",
                                           exclude_unproved=True)}
    assert kept["exact"].mean_popr == pytest.approx(50.0)
    full = {s.method: s for s in summarize(rows, "random")}
    assert full["exact"].mean_popr == pytest.approx(25.0)


def test_summarize_missing_baseline():
    rows = [BenchRow(2, 1, 1, "exact", 10.0, 2.0, True)]
    with pytest.raises(MissingBaseline):
        summarize(rows, baseline="random")


def test_dump_profiles_shape_and_volume():
    sc = scenario_for(SMALL, 2, 2, 1)
    reports = [solve_asap(sc), solve_random(sc, seed=1)]
    text = dump_profiles(sc, reports)
    lines = text.strip().splitlines()
    assert lines[0] == "slot,asap,random"
    assert len(lines) == sc.period + 1
    volume = sc.total_volume
    for col in (1, 2):
        got = sum(float(line.split(",")[col]) for line in lines[1:])
        assert got == pytest.approx(volume)
    expected = traffic_profile(sc, reports[0].schedule).per_slot
    assert [float(line.split(",")[1]) for line in lines[1:]] \
        == pytest.approx(list(expected))


def test_csv_rendering():
    rows = run_experiment(SMALL)
    text = rows_csv(rows)
    lines = text.strip().splitlines()
    assert lines[0] == "robots,tasks,scenario_id,method,peak,runtime_ms,proved_optimal"
    assert len(lines) == 10
    assert re.fullmatch(r"2,2,1,exact,\d+(\.\d+)?,\d+\.\d{3},true", lines[1])
    stext = summary_csv(summarize(rows, baseline="random"))
    slines = stext.strip().splitlines()
    assert slines[0] == "robots,tasks,method,mean_peak,mean_popr,mean_runtime_ms"
    assert len(slines) == 4
