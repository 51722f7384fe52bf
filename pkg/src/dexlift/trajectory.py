"""Lift-height sweep producing gripper waypoints.

Dexterous mode moves the grasp edge toward the far end by exactly the amount
the lying part would otherwise have to slide, holding the gripper tangent to
the material.  Vertical-naive mode is the comparison baseline: grasp, rotate
in place to 90 degrees, then rise straight up at x = L.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import List, Optional

from .errors import ConfigError, DomainError
from .model import (
    CatenaryState,
    MaterialSpec,
    Mode,
    Trajectory,
    Waypoint,
    quaternion_from_pitch,
    slerp,
    waypoint_coordinates,
)
from .solver import DEFAULT_CONFIG, SolverConfig, solve_state, solve_states_monotone

HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class TrajectoryRequest:
    material: MaterialSpec
    step_dz: float = 0.001
    mode: Mode = Mode.DEXTEROUS
    include_terminal: bool = True
    solver: SolverConfig = field(default_factory=SolverConfig)

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", Mode.parse(self.mode))
        L = self.material.length_L
        if not (math.isfinite(self.step_dz) and 0 < self.step_dz < L):
            raise ConfigError(f"step_dz must satisfy 0 < step_dz < L={L}, got {self.step_dz!r}")


def height_grid(length: float, step: float, eps_terminal: float) -> List[float]:
    """Grid ``i * step`` strictly below the terminal cap ``L (1 - eps)``."""
    cap = length * (1.0 - eps_terminal)
    n = int(math.floor(cap / step))
    grid = [i * step for i in range(n + 2)]
    return [z for z in grid if z < cap]


def _pose(z1: float, x: float, z: float, alpha: float) -> Waypoint:
    return Waypoint(z1=z1, x=x, z=z, alpha=alpha, quat=quaternion_from_pitch(alpha))


def generate_trajectory(req: TrajectoryRequest) -> Trajectory:
    m = req.material
    L = m.length_L
    heights = height_grid(L, req.step_dz, req.solver.eps_terminal)
    states = solve_states_monotone(heights, m, req.solver)

    waypoints: List[Waypoint] = []
    tagged: List[Optional[CatenaryState]] = []
    if req.mode is Mode.DEXTEROUS:
        for s in states:
            x, _ = waypoint_coordinates(s, m)
            # z is pinned to the commanded height; the catenary value agrees to tol
            waypoints.append(_pose(s.z1, x, s.z1, s.alpha))
            tagged.append(s)
        if req.include_terminal:
            waypoints.append(_pose(L, 0.0, L, HALF_PI))
            tagged.append(None)
    else:
        flat = states[0]
        waypoints.append(_pose(0.0, L, 0.0, 0.0))
        tagged.append(flat)
        # instantaneous reorientation before the vertical rise
        waypoints.append(_pose(0.0, L, 0.0, HALF_PI))
        tagged.append(flat)
        for s in states[1:]:
            waypoints.append(_pose(s.z1, L, s.z1, HALF_PI))
            tagged.append(s)
        if req.include_terminal:
            waypoints.append(_pose(L, L, L, HALF_PI))
            tagged.append(None)

    tol_res = req.solver.residual_tol(m)
    return Trajectory(
        material=m,
        mode=req.mode,
        step_dz=req.step_dz,
        waypoints=tuple(waypoints),
        terminal_appended=req.include_terminal,
        states=tuple(tagged),
        tol_u=req.solver.tol_u,
        tol_residual=tol_res,
    )


def slip_distance_naive(z1: float, material: MaterialSpec,
                        cfg: SolverConfig = DEFAULT_CONFIG) -> float:
    """Inward slide of the lying part forced by a purely vertical lift."""
    s = solve_state(z1, material, cfg)
    return s.L1 - s.l1


def _interp(w0: Waypoint, w1: Waypoint, t: float) -> Waypoint:
    quat = slerp(w0.quat, w1.quat, t)
    return Waypoint(
        z1=w0.z1 + t * (w1.z1 - w0.z1),
        x=w0.x + t * (w1.x - w0.x),
        z=w0.z + t * (w1.z - w0.z),
        alpha=w0.alpha + t * (w1.alpha - w0.alpha),
        quat=quat,
    )


def path_length(waypoints) -> float:
    return math.fsum(math.hypot(b.x - a.x, b.z - a.z) for a, b in zip(waypoints, waypoints[1:]))


def resample_by_path_length(traj: Trajectory, ds: float) -> Trajectory:
    """Waypoints every ``ds`` metres of (x, z) travel along the original path.

    Positions are interpolated linearly on the original polyline and
    orientations by slerp, so every new sample lies on the input path.  Both
    endpoints are kept exactly.  Orientation-only segments (zero travel) are
    collapsed.
    """
    wps = traj.waypoints
    if len(wps) < 2:
        raise DomainError("need at least two waypoints to resample")
    if not ds > 0:
        raise DomainError(f"ds must be > 0, got {ds!r}")

    cum = [0.0]
    for a, b in zip(wps, wps[1:]):
        cum.append(cum[-1] + math.hypot(b.x - a.x, b.z - a.z))
    total = cum[-1]
    if total <= 0.0:
        raise DomainError("zero-length path cannot be resampled")

    out = [wps[0]]
    i = 1
    s = ds
    guard = 1e-12 * total
    while s < total - guard:
        j = bisect.bisect_left(cum, s, lo=1)
        seg = cum[j] - cum[j - 1]
        t = (s - cum[j - 1]) / seg
        out.append(_interp(wps[j - 1], wps[j], t))
        i += 1
        s = i * ds
    out.append(wps[-1])
    return Trajectory(
        material=traj.material,
        mode=traj.mode,
        step_dz=traj.step_dz,
        waypoints=tuple(out),
        terminal_appended=traj.terminal_appended,
        states=(),
        tol_u=traj.tol_u,
        tol_residual=traj.tol_residual,
    )
