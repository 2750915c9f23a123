import pytest

from peaksched import (
    InfeasibleParams,
    UnknownExample,
    brute_force_optimal,
    is_feasible,
    solve_asap,
    solve_exact,
    popr,
)
from peaksched.generator import (
    BUNDLED_EXAMPLES,
    GenParams,
    bundled_example,
    generate,
)
from peaksched.rng import mix64


def test_deterministic():
    p = GenParams(robots=4, tasks_per_robot=2, seed=42)
    assert generate(p) == generate(p)


def test_seed_changes_scenario():
    a = generate(GenParams(robots=4, tasks_per_robot=2, seed=1))
    b = generate(GenParams(robots=4, tasks_per_robot=2, seed=2))
    assert a != b


def test_shapes_and_ranges_fuzz():
    for k in range(50):
        p = GenParams(robots=3, tasks_per_robot=2, seed=mix64(5, k))
        sc = generate(p)
        assert sc.period == 15
        assert len(sc.robots) == 3
        for robot in sc.robots:
            assert len(robot) == 2
            for t in robot:
                assert 1 <= t.rate <= 4 and t.rate == int(t.rate)
                assert 1 <= t.duration <= 3
                assert t.gap_min == 1
                assert 3 <= t.gap_max <= 5
        assert is_feasible(sc)


def test_real_rates():
    sc = generate(GenParams(robots=2, tasks_per_robot=2, seed=8,
                            real_rates=True))
    rates = [t.rate for _, _, t in sc.tasks()]
    assert all(1 <= r <= 4 for r in rates)
    assert any(r != int(r) for r in rates)


def test_default_ranges_never_reject():
    # worst case demand per robot: 3 tasks * (3 + 1) = 12 <= 15
    for k in range(30):
        generate(GenParams(robots=10, tasks_per_robot=3, seed=mix64(9, k)))


def test_infeasible_params():
    with pytest.raises(InfeasibleParams):
        generate(GenParams(robots=1, tasks_per_robot=3, period=5,
                           duration_range=(3, 3), gap_min=2,
                           gap_max_range=(2, 4)))


def test_param_validation():
    with pytest.raises(ValueError):
        GenParams(robots=0, tasks_per_robot=1)
    with pytest.raises(ValueError):
        GenParams(robots=1, tasks_per_robot=1, rate_range=(4, 1))
    with pytest.raises(ValueError):
        GenParams(robots=1, tasks_per_robot=1, gap_min=4,
                  gap_max_range=(3, 5))


def test_bundled_example_targets():
    sc = bundled_example("welding_palletiser")
    assert sc.period == 60
    assert solve_asap(sc).peak == pytest.approx(130.0)
    res = brute_force_optimal(sc)
    assert res.best_peak == pytest.approx(65.65)
    assert solve_exact(sc).peak == pytest.approx(65.65)
    assert popr(130.0, 65.65) == pytest.approx(49.5, abs=0.1)


def test_bundled_example_unknown():
    assert "welding_palletiser" in BUNDLED_EXAMPLES
    with pytest.raises(UnknownExample):
        bundled_example("nope")
