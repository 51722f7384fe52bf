"""Figure rendering for the CLI report path.

Figures are written to files next to the data outputs; nothing is shown
interactively.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .model import Trajectory  # noqa: E402
from .shape import MaterialShape, SweepTable  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "savefig.dpi": 150,
}


def _save(fig, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, bbox_inches="tight", metadata={"Software": None})
    plt.close(fig)
    return path


def plot_trajectory(traj: Trajectory, path: Path) -> Path:
    wps = traj.waypoints
    x = [w.x for w in wps]
    z = [w.z for w in wps]
    z1 = [w.z1 for w in wps]
    alpha = [math.degrees(w.alpha) for w in wps]
    with plt.rc_context(STYLE):
        fig, (ax_path, ax_ang) = plt.subplots(1, 2, figsize=(7.0, 3.0))
        ax_path.plot(x, z, color="k", lw=1.2)
        ax_path.set_xlabel("x [m]")
        ax_path.set_ylabel("z [m]")
        ax_path.set_aspect("equal", adjustable="datalim")
        ax_path.set_title(f"grasp path ({traj.mode.value})")
        ax_ang.plot(z1, alpha, color="C3", lw=1.2)
        ax_ang.set_xlabel("lift height z1 [m]")
        ax_ang.set_ylabel("gripper pitch [deg]")
        fig.tight_layout()
        return _save(fig, path)


def plot_shapes(shapes: Sequence[MaterialShape], path: Path) -> Path:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5.0, 3.5))
        for shp in shapes:
            ax.plot(shp.samples[:, 0], shp.samples[:, 1], lw=1.2,
                    label=f"z1 = {shp.z1:g} m ({shp.mode.value})")
        ax.set_xlabel("x [m]")
        ax.set_ylabel("z [m]")
        ax.set_aspect("equal", adjustable="datalim")
        ax.legend(loc="upper left")
        fig.tight_layout()
        return _save(fig, path)


def plot_sweep(table: SweepTable, path: Path) -> Path:
    env = table.envelopes
    z1 = [e.z1 for e in env]
    with plt.rc_context(STYLE):
        fig, (ax_x, ax_a) = plt.subplots(1, 2, figsize=(7.0, 3.0))
        ax_x.fill_between(z1, [e.x_min for e in env], [e.x_max for e in env],
                          color="0.8", lw=0)
        ax_a.fill_between(z1, [math.degrees(e.alpha_min) for e in env],
                          [math.degrees(e.alpha_max) for e in env], color="0.8", lw=0)
        for k in table.k_values:
            cells = [c for c in table.cells if c.k == k and c.ok]
            if k in (table.k_values[0], table.k_values[-1]):
                ax_x.plot([c.z1 for c in cells], [c.x for c in cells], lw=1.0, label=f"k = {k:g}")
                ax_a.plot([c.z1 for c in cells], [math.degrees(c.alpha) for c in cells], lw=1.0)
        ax_x.set_xlabel("lift height z1 [m]")
        ax_x.set_ylabel("grasp x [m]")
        ax_x.legend()
        ax_a.set_xlabel("lift height z1 [m]")
        ax_a.set_ylabel("gripper pitch [deg]")
        fig.tight_layout()
        return _save(fig, path)
