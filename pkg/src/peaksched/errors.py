"""Exception hierarchy shared by all peaksched modules."""


class SchedulingError(Exception):
    """Base class for all peaksched errors."""


class WindowEmpty(SchedulingError):
    """A task's admissible start window is empty (earliest > latest)."""

    def __init__(self, robot: int, task: int, es: int, ls: int):
        super().__init__(
            f"empty start window for robot {robot}, task {task}: "
            f"earliest {es} > latest {ls}"
        )
        self.robot = robot
        self.task = task
        self.es = es
        self.ls = ls


class Infeasible(SchedulingError):
    """The scenario admits no valid schedule."""


class ShapeMismatch(SchedulingError):
    """A schedule does not cover exactly the scenario's tasks."""


class CapExceeded(SchedulingError):
    """Estimated enumeration size exceeds the oracle cap."""

    def __init__(self, estimate: int, cap: int):
        super().__init__(f"estimated {estimate} schedules exceeds cap {cap}")
        self.estimate = estimate
        self.cap = cap


class PeriodOverflow(SchedulingError):
    """Harmonized period (lcm of input periods) exceeds the configured cap."""


class UnknownExample(SchedulingError):
    """No bundled example scenario with the requested name."""


class InfeasibleParams(SchedulingError):
    """Generator parameters cannot produce a feasible scenario."""


class MissingBaseline(SchedulingError):
    """Benchmark summary requested against a baseline absent from the rows."""
