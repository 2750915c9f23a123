"""Serialize the time-indexed peak-minimization model to CPLEX-style LP text.

The exported model is the literal integer program solved by the exact
solver: binary start indicators ``x_i_j_t``, binary occupancy indicators
``y_i_j_t`` linked per slot, a continuous peak variable ``z`` bounding
every slot's aggregate rate, gap bounds between consecutive tasks, and the
end-of-period rule for each robot's last task.  Indices in variable names
are 1-based.  External MILP solvers can read the file directly, which is
how the exact solver is cross-validated.
"""

from __future__ import annotations

from .model import Scenario

MAX_LINE = 255


def _num(v: float) -> str:
    if float(v).is_integer():
        return str(int(v))
    return f"{v:.12g}"


def _term(coef: float, var: str, first: bool) -> str:
    if coef < 0:
        sign = "- "
        coef = -coef
    else:
        sign = "" if first else "+ "
    if coef == 1:
        return f"{sign}{var}"
    return f"{sign}{_num(coef)} {var}"


def _emit(lines: list[str], label: str, terms: list[tuple[float, str]],
          sense: str, rhs: float) -> None:
    parts = [f" {label}:"]
    for idx, (coef, var) in enumerate(terms):
        parts.append(_term(coef, var, first=idx == 0))
    parts.append(f"{sense} {_num(rhs)}")
    line = ""
    for part in parts:
        candidate = part if not line else f"{line} {part}"
        if len(candidate) > MAX_LINE and line:
            lines.append(line)
            line = f"   {part}"
        else:
            line = candidate
    lines.append(line)


def export_lp(scenario: Scenario) -> str:
    """Render the scenario's ILP as an LP-format text document."""
    T = scenario.period
    lines: list[str] = []
    lines.append(f"\\ peak-rate scheduling model: {len(scenario.robots)} "
                 f"robots, period {T}")
    lines.append("Minimize")
    lines.append(" obj: z")
    lines.append("Subject To")

    # peak definition: aggregate rate on every slot stays below z
    for t in range(1, T + 1):
        terms = [(spec.rate, f"y_{i + 1}_{j + 1}_{t}")
                 for i, j, spec in scenario.tasks() if spec.rate != 0]
        terms.append((-1.0, "z"))
        _emit(lines, f"peak_{t}", terms, "<=", 0)

    for i, tasks in enumerate(scenario.robots):
        J = len(tasks)
        for j, spec in enumerate(tasks):
            if j + 1 < J:
                # start of the successor minus finish of this task
                terms = [(float(t), f"x_{i + 1}_{j + 2}_{t}")
                         for t in range(1, T + 1)]
                terms += [(-(float(t) + spec.duration), f"x_{i + 1}_{j + 1}_{t}")
                          for t in range(1, T + 1)]
                _emit(lines, f"gapmin_{i + 1}_{j + 1}", terms, ">=", spec.gap_min)
                if spec.gap_max is not None:
                    _emit(lines, f"gapmax_{i + 1}_{j + 1}", terms, "<=",
                          spec.gap_max)
            else:
                terms = [(float(t) + spec.duration - 1, f"x_{i + 1}_{j + 1}_{t}")
                         for t in range(1, T + 1)]
                _emit(lines, f"endgap_{i + 1}", terms, "<=", T - spec.gap_min)

    # occupancy linking and counting
    for i, j, spec in scenario.tasks():
        for t in range(1, T + 1):
            for tp in range(t, min(t + spec.duration - 1, T) + 1):
                _emit(lines, f"link_{i + 1}_{j + 1}_{t}_{tp}",
                      [(1.0, f"y_{i + 1}_{j + 1}_{tp}"),
                       (-1.0, f"x_{i + 1}_{j + 1}_{t}")], ">=", 0)
        _emit(lines, f"once_{i + 1}_{j + 1}",
              [(1.0, f"x_{i + 1}_{j + 1}_{t}") for t in range(1, T + 1)],
              "=", 1)
        _emit(lines, f"dur_{i + 1}_{j + 1}",
              [(1.0, f"y_{i + 1}_{j + 1}_{t}") for t in range(1, T + 1)],
              "=", spec.duration)

    # absolute start bounds (set only on period-harmonized scenarios)
    bounds = []
    for i, j, spec in scenario.tasks():
        lo = spec.start_min or 1
        hi = spec.start_max if spec.start_max is not None else T
        for t in range(1, T + 1):
            if t < lo or t > hi:
                bounds.append(f" x_{i + 1}_{j + 1}_{t} = 0")
    if bounds:
        lines.append("Bounds")
        lines.extend(bounds)

    lines.append("Binary")
    for i, j, _ in scenario.tasks():
        for t in range(1, T + 1):
            lines.append(f" x_{i + 1}_{j + 1}_{t}")
    for i, j, _ in scenario.tasks():
        for t in range(1, T + 1):
            lines.append(f" y_{i + 1}_{j + 1}_{t}")
    lines.append("End")
    return "\n".join(lines) + "\n"
