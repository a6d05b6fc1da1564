"""Rendering of simulation results: delimited output, summary dicts, figures.

The CSV layout is one row per recorded step: the step index, one opinion
column per agent (``x_<label>``), the sup-norm distance to the predicted
limit when available, and the envelope value when one was attached.  Floats
are written with 12 significant digits and lines always end with LF so the
files are stable across platforms.
"""

from __future__ import annotations

import csv
from pathlib import Path

from .analysis import AnalysisReport
from .dynamics import Calibration, Trajectory
from .network import MultiplexNetwork

__all__ = [
    "write_trajectory_csv",
    "run_summary",
    "render_convergence_figure",
]


def _fmt(value: float) -> str:
    return format(float(value), ".12g")


def write_trajectory_csv(path, net: MultiplexNetwork, trajectory: Trajectory) -> Path:
    """Write the recorded run to ``path``; returns the path written."""
    path = Path(path)
    header = ["t"] + [f"x_{label}" for label in net.labels]
    if trajectory.err_series is not None:
        header.append("err_inf")
    if trajectory.bound_series is not None:
        header.append("bound")

    with open(path, "w", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for k, t in enumerate(trajectory.times):
            row = [str(t)] + [_fmt(v) for v in trajectory.states[k]]
            if trajectory.err_series is not None:
                row.append(_fmt(trajectory.err_series[k]))
            if trajectory.bound_series is not None:
                row.append(_fmt(trajectory.bound_series[k]))
            writer.writerow(row)
    return path


def run_summary(
    trajectory: Trajectory,
    report: AnalysisReport,
    calibration: Calibration | None = None,
) -> dict:
    """Key figures of a run, in a stable JSON-friendly shape."""
    return {
        "converged_at": trajectory.converged_at,
        "consensus_value": report.prediction.consensus_value,
        "q": report.contraction,
        "U_min_dominating": None if calibration is None else calibration.u_min,
        "U_t0_prior": None if calibration is None else calibration.u_prior,
        "mode": report.prediction.mode,
    }


def render_convergence_figure(path, net: MultiplexNetwork, trajectory: Trajectory) -> Path:
    """Render a two-panel PNG: opinion trajectories and error decay.

    matplotlib is imported lazily with the Agg backend, so headless use and
    library consumers that never plot both stay cheap.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = Path(path)
    has_err = trajectory.err_series is not None
    fig, axes = plt.subplots(
        1, 2 if has_err else 1, figsize=(10 if has_err else 6, 4), squeeze=False
    )

    ax = axes[0][0]
    times = list(trajectory.times)
    for j, label in enumerate(net.labels):
        ax.plot(times, trajectory.states[:, j], label=label, linewidth=1.2)
    ax.set_xlabel("step")
    ax.set_ylabel("opinion")
    ax.set_title("opinion trajectories")
    if net.n <= 12:
        ax.legend(fontsize="small", ncol=2)

    if has_err:
        ax = axes[0][1]
        err = trajectory.err_series
        positive = [(t, e) for t, e in zip(times, err) if e > 0.0]
        if positive:
            ax.semilogy(*zip(*positive), label="err_inf", linewidth=1.4)
        if trajectory.bound_series is not None:
            bnd = trajectory.bound_series
            pos_b = [(t, b) for t, b in zip(times, bnd) if b > 0.0]
            if pos_b:
                ax.semilogy(*zip(*pos_b), "--", label="bound", linewidth=1.2)
        ax.set_xlabel("step")
        ax.set_ylabel("sup distance to limit")
        ax.set_title("convergence")
        ax.legend(fontsize="small")

    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
