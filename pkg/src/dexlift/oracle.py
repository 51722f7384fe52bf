"""Discrete-chain check of the hanging segment.

A chain of ``n`` rigid links with horizontal tension ``H`` at the bottom is
built link by link from force balance alone: the vertical tension in link
``i`` carries the weight below its midpoint, ``q (i - 1/2) h``.  Positions
come from cumulative sums of per-link directions.  No hyperbolic functions
are used here, so agreement with the closed-form states is a genuine check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .errors import DomainError
from .model import CatenaryState, MaterialSpec, Mode, Trajectory


@dataclass(frozen=True)
class ChainEquilibrium:
    n_links: int
    link_length: float
    node_positions: np.ndarray = field(repr=False)  # (n + 1, 2), O first
    link_angles: np.ndarray = field(repr=False)
    H_input: float
    endpoint: Tuple[float, float]
    endpoint_angle: float

    def link_tensions(self, q: float) -> np.ndarray:
        """Per-link (horizontal, vertical) tension components."""
        h = self.link_length
        i = np.arange(1, self.n_links + 1)
        return np.column_stack([np.full(self.n_links, self.H_input), q * (i - 0.5) * h])


def chain_hang(H: float, q: float, L1: float, n: int) -> ChainEquilibrium:
    if not (H > 0 and q > 0 and L1 > 0):
        raise DomainError(f"H, q and L1 must be > 0 (got {H!r}, {q!r}, {L1!r})")
    if n < 2:
        raise DomainError(f"need at least 2 links, got {n!r}")
    h = L1 / n
    i = np.arange(1, n + 1, dtype=float)
    angles = np.arctan2(q * (i - 0.5) * h, H)
    steps = h * np.column_stack([np.cos(angles), np.sin(angles)])
    nodes = np.vstack([np.zeros((1, 2)), np.cumsum(steps, axis=0)])
    end = (float(nodes[-1, 0]), float(nodes[-1, 1]))
    return ChainEquilibrium(
        n_links=n,
        link_length=h,
        node_positions=nodes,
        link_angles=angles,
        H_input=H,
        endpoint=end,
        endpoint_angle=float(angles[-1]),
    )


@dataclass(frozen=True)
class VerificationReport:
    worst_pos_err: float
    worst_ang_err: float
    tension_err: float
    n_checked: int = 1
    worst_z1: Optional[float] = None

    def passed(self, pos_tol: float, ang_tol: float, tension_tol: float) -> bool:
        return (self.worst_pos_err < pos_tol
                and self.worst_ang_err < ang_tol
                and self.tension_err < tension_tol)

    def to_dict(self) -> dict:
        return {
            "worst_pos_err": self.worst_pos_err,
            "worst_ang_err": self.worst_ang_err,
            "tension_err": self.tension_err,
            "n_checked": self.n_checked,
            "worst_z1": self.worst_z1,
        }


def verify_state(state: CatenaryState, material: MaterialSpec, n: int) -> VerificationReport:
    """Compare the chain hung from the state's (H, q, L1) with the state.

    Reports the endpoint distance to ``(l1, z1)``, the top-link angle error
    against ``alpha``, and how far ``H`` is from the friction cap.
    """
    return _check(state, material, n)[0]


def _check(state: CatenaryState, material: MaterialSpec, n: int):
    q, L, k = material.weight_q, material.length_L, material.friction_k_covering
    tension_err = abs(state.H - q * (L - state.L1) * k)
    if state.L1 == 0.0:
        return VerificationReport(0.0, 0.0, tension_err, 1, state.z1), None
    chain = chain_hang(state.H, q, state.L1, n)
    ex, ez = chain.endpoint
    pos_err = math.hypot(ex - state.l1, ez - state.z1)
    ang_err = abs(chain.endpoint_angle - state.alpha)
    return VerificationReport(pos_err, ang_err, tension_err, 1, state.z1), chain


def verify_trajectory(traj: Trajectory, n: int, stride: int = 1) -> VerificationReport:
    """Worst-case chain errors over every ``stride``-th solved waypoint.

    For dexterous waypoints the commanded grasp x is also compared with the
    chain's prediction ``L - L1 + x_chain``, which is where slip-free lifting
    puts the grasp point when the far end stays at the origin.
    """
    if not traj.waypoints:
        raise DomainError("empty trajectory")
    if stride < 1:
        raise DomainError(f"stride must be >= 1, got {stride!r}")
    m = traj.material
    worst_pos = worst_ang = worst_ten = 0.0
    worst_z1 = None
    checked = 0
    states = traj.states or (None,) * len(traj.waypoints)
    for idx in range(0, len(traj.waypoints), stride):
        state = states[idx]
        if state is None:
            continue
        rep, chain = _check(state, m, n)
        pos = rep.worst_pos_err
        if traj.mode is Mode.DEXTEROUS and chain is not None:
            predicted = m.length_L - state.L1 + chain.endpoint[0]
            pos = max(pos, abs(traj.waypoints[idx].x - predicted))
        checked += 1
        if pos >= worst_pos:
            worst_pos, worst_z1 = pos, state.z1
        worst_ang = max(worst_ang, rep.worst_ang_err)
        worst_ten = max(worst_ten, rep.tension_err)
    return VerificationReport(worst_pos, worst_ang, worst_ten, checked, worst_z1)

