"""Material presets.

The four textile strips are 50 x 500 mm.  Their tabulated areal weight is
read as g/cm^2 and turned into a line weight over the 50 mm strip width.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional

from .errors import ConfigError
from .model import MaterialSpec

G0 = 9.80665  # m/s^2
STRIP_WIDTH_M = 0.05
STRIP_LENGTH_M = 0.5


def line_weight_from_areal(areal_g_per_cm2: float, width_m: float = STRIP_WIDTH_M) -> float:
    """Areal weight [g/cm^2] -> weight per unit length [N/m] for a strip."""
    kg_per_m2 = areal_g_per_cm2 * 10.0  # 1 g/cm^2 = 10 kg/m^2
    return kg_per_m2 * width_m * G0


@dataclass(frozen=True)
class Preset:
    name: str
    material: MaterialSpec
    raw_weight_g_per_cm2: Optional[float] = None
    thickness_mm: Optional[float] = None


def _textile(name: str, label: str, f: float, weight: float, thickness: float,
             k: float) -> Preset:
    mat = MaterialSpec(
        length_L=STRIP_LENGTH_M,
        weight_q=line_weight_from_areal(weight),
        friction_k_covering=k,
        friction_f_gripper=f,
        label=label,
    )
    return Preset(name, mat, weight, thickness)


PRESETS: Dict[str, Preset] = {
    p.name: p
    for p in (
        Preset("demo", MaterialSpec(1.0, 1.0, 0.2, 0.0, "demo strip")),
        _textile("m1", "thin denim cotton", 0.50, 0.014, 0.28, 1.54),
        _textile("m2", "600-denier cordura canvas", 0.57, 0.031, 0.4, 1.71),
        _textile("m3", "heavyweight denim cotton", 0.35, 0.036, 0.74, 1.49),
        _textile("m4", "heavyweight natural denim cotton", 0.44, 0.031, 0.62, 1.38),
    )
}

_ALIASES = {"1": "m1", "2": "m2", "3": "m3", "4": "m4"}


def get_preset(name: str) -> Preset:
    key = _ALIASES.get(name, name)
    try:
        return PRESETS[key]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
