"""Whole-strip shape reconstruction and friction sweeps."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import DexliftError, DomainError
from .model import MaterialSpec, Mode, waypoint_coordinates
from .solver import DEFAULT_CONFIG, SolverConfig, solve_state

# chord deficit budget per shape, relative to L
_LENGTH_DEFICIT = 2e-7
_MAX_SAMPLES = 4_000_001


def required_samples(L: float, a: float, L1: float) -> int:
    """Smallest uniform sample count keeping the chord deficit in budget.

    Chords of a catenary sampled every ``ds`` in arc length lose about
    ``ds**2 * pi / (96 a)`` of length, almost all of it near O.
    """
    if L1 <= 0.0:
        return 2
    ds = math.sqrt(96.0 * a * _LENGTH_DEFICIT * L / math.pi)
    return min(_MAX_SAMPLES, int(math.ceil(L / ds)) + 1)


@dataclass(frozen=True)
class MaterialShape:
    """Strip polyline from the far end to the grasp point A.

    ``samples`` is an ``(n, 2)`` array of (x, z), uniform in arc length.
    """

    z1: float
    samples: np.ndarray
    lying_length: float
    mode: Mode

    @property
    def far_end(self) -> Tuple[float, float]:
        return float(self.samples[0, 0]), float(self.samples[0, 1])

    @property
    def grasp_point(self) -> Tuple[float, float]:
        return float(self.samples[-1, 0]), float(self.samples[-1, 1])

    def polyline_length(self) -> float:
        d = np.diff(self.samples, axis=0)
        return math.fsum(np.hypot(d[:, 0], d[:, 1]))


def shape_at(z1: float, material: MaterialSpec, mode: Mode | str = Mode.DEXTEROUS,
             n_samples: int = 2001, cfg: SolverConfig = DEFAULT_CONFIG) -> MaterialShape:
    """Reconstruct the strip at lift height ``z1``.

    The lying part is straight on z = 0 and joins the catenary at its lowest
    point O with zero slope.  Dexterous mode keeps the far end at x = 0;
    vertical-naive mode keeps the grasp point at x = L so the far end has
    slid inward by ``L1 - l1``.

    ``n_samples`` is a floor: near the top of the lift the curve at O gets
    tight and the count is raised so the polyline keeps its length.
    """
    mode = Mode.parse(mode)
    if n_samples < 2:
        raise DomainError(f"n_samples must be >= 2, got {n_samples!r}")
    L = material.length_L
    state = solve_state(z1, material, cfg)
    l2 = L - state.L1
    if mode is Mode.DEXTEROUS:
        x_far = 0.0
    else:
        x_far = L - state.l1 - l2
    x_O = x_far + l2

    n_samples = max(n_samples, required_samples(L, state.a, state.L1))
    s = np.linspace(0.0, L, n_samples)
    xs = np.empty(n_samples)
    zs = np.zeros(n_samples)
    lying = s <= l2
    xs[lying] = x_far + s[lying]
    if state.L1 > 0.0:
        a = state.a
        # arc-length parametrisation of the catenary from O
        t = (s[~lying] - l2) / a
        xs[~lying] = x_O + a * np.arcsinh(t)
        zs[~lying] = a * t * t / (np.sqrt(1.0 + t * t) + 1.0)
    # pin A exactly to the state
    xs[-1] = x_O + state.l1
    zs[-1] = z1
    return MaterialShape(z1=z1, samples=np.column_stack([xs, zs]), lying_length=l2, mode=mode)


@dataclass(frozen=True)
class SweepCell:
    k: float
    z1: float
    x: float
    z: float
    alpha: float
    ok: bool
    error: str = ""


@dataclass(frozen=True)
class Envelope:
    z1: float
    x_min: float
    x_max: float
    alpha_min: float
    alpha_max: float

    @property
    def alpha_width(self) -> float:
        return self.alpha_max - self.alpha_min

    @property
    def x_width(self) -> float:
        return self.x_max - self.x_min


@dataclass(frozen=True)
class SweepTable:
    k_values: Tuple[float, ...]
    heights: Tuple[float, ...]
    cells: Tuple[SweepCell, ...]
    envelopes: Tuple[Envelope, ...]

    def cell(self, k: float, z1: float) -> SweepCell:
        for c in self.cells:
            if c.k == k and c.z1 == z1:
                return c
        raise KeyError((k, z1))

    def envelope_at(self, z1: float) -> Envelope:
        for e in self.envelopes:
            if e.z1 == z1:
                return e
        raise KeyError(z1)


def sweep_friction(material: MaterialSpec, k_values: Sequence[float],
                   heights: Sequence[float], cfg: SolverConfig = DEFAULT_CONFIG) -> SweepTable:
    """Dexterous grasp pose for every (k, z1) pair plus per-height envelopes.

    A cell whose solve fails is kept with ``ok=False`` and NaN values; it is
    left out of the envelopes.
    """
    if not k_values or not heights:
        raise DomainError("k_values and heights must be nonempty")
    for k in k_values:
        if not k > 0:
            raise DomainError(f"friction coefficients must be > 0, got {k!r}")

    cells: List[SweepCell] = []
    by_height: Dict[float, List[SweepCell]] = {z: [] for z in heights}
    for k in k_values:
        mat = material.with_friction(k)
        for z1 in heights:
            try:
                st = solve_state(z1, mat, cfg)
                x, _ = waypoint_coordinates(st, mat)
                cell = SweepCell(k, z1, x, z1, st.alpha, True)
            except DexliftError as exc:
                nan = float("nan")
                cell = SweepCell(k, z1, nan, nan, nan, False, str(exc))
            cells.append(cell)
            by_height[z1].append(cell)

    envelopes = []
    for z1 in heights:
        good = [c for c in by_height[z1] if c.ok]
        if good:
            xs = [c.x for c in good]
            al = [c.alpha for c in good]
            envelopes.append(Envelope(z1, min(xs), max(xs), min(al), max(al)))
        else:
            nan = float("nan")
            envelopes.append(Envelope(z1, nan, nan, nan, nan))
    return SweepTable(tuple(k_values), tuple(heights), tuple(cells), tuple(envelopes))
