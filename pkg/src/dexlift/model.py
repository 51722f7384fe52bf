"""Domain types and closed-form catenary relations.

Planner frame: the x axis runs along the support surface from the material's
far (non-grasped) end, which sits at the origin, toward the grasped edge A; z
points up.  The lift plane is x-z and its normal is the body y axis.

Orientation quaternions are scalar-first ``(w, x, y, z)``, right-handed.  A
gripper pitch ``alpha`` is the rotation by ``alpha`` about +y, so that the
pitch quaternion maps the unit +x vector to ``(cos alpha, 0, -sin alpha)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

from .errors import DomainError, SingularStateError

Quaternion = Tuple[float, float, float, float]


class Mode(str, enum.Enum):
    DEXTEROUS = "dexterous"
    VERTICAL_NAIVE = "vertical-naive"

    @classmethod
    def parse(cls, value: "Mode | str") -> "Mode":
        try:
            return cls(value)
        except ValueError:
            choices = ", ".join(m.value for m in cls)
            raise DomainError(f"unknown mode {value!r} (expected one of {choices})") from None


@dataclass(frozen=True)
class MaterialSpec:
    """Sheet strip reduced to a 2D inextensible chain.

    Attributes:
        length_L: strip length [m]
        weight_q: weight per unit length [N/m]
        friction_k_covering: sliding friction against the support surface
        friction_f_gripper: friction against the gripper (carried, unused)
        label: free text
    """

    length_L: float
    weight_q: float
    friction_k_covering: float
    friction_f_gripper: float = 0.0
    label: str = ""

    def __post_init__(self) -> None:
        for name in ("length_L", "weight_q", "friction_k_covering"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be a positive finite number, got {value!r}")
        if not (math.isfinite(self.friction_f_gripper) and self.friction_f_gripper >= 0):
            raise DomainError(f"friction_f_gripper must be >= 0, got {self.friction_f_gripper!r}")

    @property
    def L(self) -> float:
        return self.length_L

    @property
    def q(self) -> float:
        return self.weight_q

    @property
    def k(self) -> float:
        return self.friction_k_covering

    def with_friction(self, k: float) -> "MaterialSpec":
        return MaterialSpec(self.length_L, self.weight_q, k, self.friction_f_gripper, self.label)


@dataclass(frozen=True)
class CatenaryState:
    """Equilibrium of the strip at one lift height.

    ``u`` is the shape ratio l1/a, ``a = H/q`` the catenary parameter, ``l1``
    the horizontal span of the hanging part AO, ``L1`` its arc length, ``H``
    the horizontal tension at the lowest point O and ``alpha`` the tangent
    angle at the grasped edge A.
    """

    z1: float
    u: float
    a: float
    l1: float
    L1: float
    H: float
    alpha: float


@dataclass(frozen=True)
class Waypoint:
    """Gripper pose sample in the planner frame.

    ``alpha`` is the commanded gripper pitch and always agrees with ``quat``.
    ``z1`` is the lift height of the grasped edge the sample was generated at.
    """

    z1: float
    x: float
    z: float
    alpha: float
    quat: Quaternion


@dataclass(frozen=True)
class Trajectory:
    material: MaterialSpec
    mode: Mode
    step_dz: float
    waypoints: Tuple[Waypoint, ...]
    terminal_appended: bool
    # parallel to waypoints; None for analytic or synthetic poses
    states: Tuple[Optional[CatenaryState], ...] = field(default=(), compare=False)
    tol_u: float = 0.0
    tol_residual: float = 0.0

    def __len__(self) -> int:
        return len(self.waypoints)


def _require_positive_a(a: float) -> None:
    if not a > 0:
        raise DomainError(f"catenary parameter a must be > 0, got {a!r}")


def catenary_height(x: float, a: float) -> float:
    """Height above the lowest point O of the catenary ``a (cosh(x/a) - 1)``."""
    _require_positive_a(a)
    # 2 sinh^2(t/2) == cosh(t) - 1 without cancellation near t = 0
    t = x / a
    try:
        return 2.0 * a * math.sinh(0.5 * t) ** 2
    except OverflowError:
        return math.inf


def hanging_arc_length(l1: float, a: float) -> float:
    """Arc length of the catenary from O to horizontal offset ``l1``."""
    _require_positive_a(a)
    if l1 < 0:
        raise DomainError(f"l1 must be >= 0, got {l1!r}")
    try:
        # rounding in l1/a can land one ulp under the chord for tiny l1/a
        return max(l1, a * math.sinh(l1 / a))
    except OverflowError:
        return math.inf


def tension_from_friction(material: MaterialSpec, L1: float) -> float:
    """Friction cap on the horizontal tension: ``q (L - L1) k``."""
    if not 0 <= L1 <= material.length_L:
        raise DomainError(f"hanging length L1={L1!r} outside [0, {material.length_L}]")
    return material.weight_q * (material.length_L - L1) * material.friction_k_covering


def tangent_angle(u: float) -> float:
    if u < 0:
        raise DomainError(f"shape ratio u must be >= 0, got {u!r}")
    return math.atan(math.sinh(u)) if u < 700 else 0.5 * math.pi


def waypoint_coordinates(state: CatenaryState, material: MaterialSpec) -> Tuple[float, float]:
    """Grasp-point position for slip-free lifting.

    The lying part keeps its far end at the origin, so the grasp point sits at
    ``x = L - L1 + l1``; its height is the state's lift height.
    """
    if state.H == 0.0:
        if state.l1 > 0.0:
            raise SingularStateError("H = 0 with l1 > 0: use the analytic terminal pose")
        if state.L1 == 0.0:
            return material.length_L, state.z1
    x = material.length_L - state.L1 + state.l1
    z = catenary_height(state.l1, state.a) if state.a > 0 else 0.0
    return x, z


def quaternion_from_pitch(alpha: float) -> Quaternion:
    half = 0.5 * alpha
    w, y = math.cos(half), math.sin(half)
    if w < 0:
        w, y = -w, -y
    return (w, 0.0, y, 0.0)


def quaternion_pitch(quat: Quaternion) -> float:
    """Inverse of :func:`quaternion_from_pitch` for pure-pitch quaternions."""
    w, _, y, _ = quat
    return 2.0 * math.atan2(y, w)


def rotate_vector(quat: Quaternion, v: Tuple[float, float, float]) -> Tuple[float, float, float]:
    w, qx, qy, qz = quat
    vx, vy, vz = v
    # v' = v + 2 w (r x v) + 2 r x (r x v)
    cx = qy * vz - qz * vy
    cy = qz * vx - qx * vz
    cz = qx * vy - qy * vx
    ccx = qy * cz - qz * cy
    ccy = qz * cx - qx * cz
    ccz = qx * cy - qy * cx
    return (
        vx + 2.0 * (w * cx + ccx),
        vy + 2.0 * (w * cy + ccy),
        vz + 2.0 * (w * cz + ccz),
    )


def slerp(q0: Quaternion, q1: Quaternion, t: float) -> Quaternion:
    dot = sum(a * b for a, b in zip(q0, q1))
    if dot < 0:
        q1 = tuple(-c for c in q1)  # type: ignore[assignment]
        dot = -dot
    if dot > 0.9999995:
        out = [a + t * (b - a) for a, b in zip(q0, q1)]
    else:
        theta = math.acos(min(dot, 1.0))
        s = math.sin(theta)
        w0 = math.sin((1 - t) * theta) / s
        w1 = math.sin(t * theta) / s
        out = [w0 * a + w1 * b for a, b in zip(q0, q1)]
    norm = math.sqrt(sum(c * c for c in out))
    return tuple(c / norm for c in out)  # type: ignore[return-value]
