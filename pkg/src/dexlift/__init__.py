"""Slip-free lifting trajectories for sheet materials grasped at one edge."""

from .errors import (
    ConfigError,
    DexliftError,
    DomainError,
    HeightOutOfRangeError,
    SingularStateError,
    SolverError,
)
from .model import (
    CatenaryState,
    MaterialSpec,
    Mode,
    Trajectory,
    Waypoint,
    catenary_height,
    hanging_arc_length,
    quaternion_from_pitch,
    tangent_angle,
    tension_from_friction,
    waypoint_coordinates,
)
from .oracle import ChainEquilibrium, VerificationReport, chain_hang, verify_state, verify_trajectory
from .presets import PRESETS, get_preset
from .shape import MaterialShape, SweepTable, shape_at, sweep_friction
from .solver import SolverConfig, solve_shape_ratio, solve_state, solve_states_monotone
from .trajectory import (
    TrajectoryRequest,
    generate_trajectory,
    resample_by_path_length,
    slip_distance_naive,
)

__version__ = "0.1.0"

__all__ = [
    "CatenaryState", "ChainEquilibrium", "ConfigError", "DexliftError", "DomainError",
    "HeightOutOfRangeError", "MaterialShape", "MaterialSpec", "Mode", "PRESETS",
    "SingularStateError", "SolverConfig", "SolverError", "SweepTable", "Trajectory",
    "TrajectoryRequest", "VerificationReport", "Waypoint", "catenary_height", "chain_hang",
    "generate_trajectory", "get_preset", "hanging_arc_length", "quaternion_from_pitch",
    "resample_by_path_length", "shape_at", "slip_distance_naive", "solve_shape_ratio",
    "solve_state", "solve_states_monotone", "sweep_friction", "tangent_angle",
    "tension_from_friction", "verify_state", "verify_trajectory", "waypoint_coordinates",
]
