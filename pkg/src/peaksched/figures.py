"""Matplotlib rendering of benchmark output, saved next to the CSVs.

Two figure families: per-slot traffic profiles (one line per method over
one period) and sweep summaries (mean peak versus robot count, one panel
per task count, with the exact method's mean peak reduction annotated).
"""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .bench import SummaryRow  # noqa: E402
from .model import Scenario, SolveReport, traffic_profile  # noqa: E402


def save_profile_figure(scenario: Scenario, reports: Sequence[SolveReport],
                        path: str) -> None:
    """Step plot of each method's aggregate rate per slot."""
    fig, ax = plt.subplots(figsize=(7, 4))
    slots = range(1, scenario.period + 1)
    for report in reports:
        profile = traffic_profile(scenario, report.schedule)
        ax.step(slots, profile.per_slot, where="mid", label=report.method)
    ax.set_xlabel("time slot")
    ax.set_ylabel("aggregate rate (Mbps)")
    ax.set_xlim(1, scenario.period)
    ax.set_ylim(bottom=0)
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)


def save_summary_figures(summary: Sequence[SummaryRow], out_dir: str,
                         baseline: str = "random") -> list[str]:
    """One peak-comparison figure per task count; returns written paths."""
    task_counts = sorted({r.tasks for r in summary})
    methods = sorted({r.method for r in summary})
    paths = []
    for J in task_counts:
        fig, ax = plt.subplots(figsize=(6, 4))
        for method in methods:
            rows = sorted((r for r in summary
                           if r.tasks == J and r.method == method),
                          key=lambda r: r.robots)
            ax.plot([r.robots for r in rows], [r.mean_peak for r in rows],
                    marker="o", label=method)
            if method != baseline:
                for r in rows:
                    ax.annotate(f"{r.mean_popr:.1f}%",
                                (r.robots, r.mean_peak),
                                textcoords="offset points", xytext=(0, 6),
                                fontsize=7, ha="center")
        ax.set_xlabel("number of robots")
        ax.set_ylabel("mean peak rate (Mbps)")
        ax.set_title(f"{J} task(s) per robot")
        ax.legend()
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        path = f"{out_dir}/peaks_tasks{J}.png"
        fig.savefig(path, metadata={"Software": None})
        plt.close(fig)
        paths.append(path)
    return paths
