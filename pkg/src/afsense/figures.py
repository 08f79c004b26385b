"""Report figures rendered next to the delimited outputs."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .report import ResultRow

__all__ = ["render_sweep_figure", "render_trace_figure"]


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_sweep_figure(rows: Sequence[ResultRow], path: str | Path) -> None:
    """Objective versus SINR demand, with the infeasible region marked."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    feasible = [r for r in rows if r.objective_db is not None]
    infeasible = [r for r in rows if r.objective_db is None]
    if feasible:
        label = f"{feasible[0].combiner}/{feasible[0].mode}"
        ax.plot(
            [r.psi for r in feasible],
            [r.objective_db for r in feasible],
            marker="o",
            markersize=4,
            label=label,
        )
        ax.legend()
    if infeasible:
        wall = min(r.psi for r in infeasible)
        ax.axvline(wall, color="crimson", linestyle="--", linewidth=1)
        ax.annotate(
            "infeasible",
            xy=(wall, 0.5),
            xycoords=("data", "axes fraction"),
            rotation=90,
            va="center",
            ha="right",
            color="crimson",
            fontsize=9,
        )
    ax.set_xlabel("SINR demand")
    ax.set_ylabel("total resource [dB]")
    ax.grid(True, alpha=0.4)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_trace_figure(
    iterations: Sequence[int], objective_db: Sequence[float], path: str | Path
) -> None:
    """Objective trajectory of one successive-condensation run."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(iterations, objective_db, marker="s", markersize=4)
    ax.set_xlabel("outer iteration")
    ax.set_ylabel("total resource [dB]")
    ax.grid(True, alpha=0.4)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
