"""Root finding for the shape ratio u = l1/a and assembly of full states.

Eliminating ``a`` between the grasp-point height relation and the friction
balance leaves one scalar equation in ``u``::

    g(u) = (cosh u - 1) / (1 + k sinh u) = z1 / (L k)

``g`` rises strictly from 0 toward ``1/k``, so the root is unique and any
bracket ``[lo, hi]`` with ``g(lo) <= target <= g(hi)`` contains it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Optional

from .errors import DomainError, HeightOutOfRangeError, SolverError
from .model import CatenaryState, MaterialSpec, tangent_angle

_U_OVERFLOW = 700.0
_U_BRACKET_LIMIT = 1024.0


@dataclass(frozen=True)
class SolverConfig:
    tol_u: float = 1e-12
    # absolute, in metres; None means 1e-10 * L
    tol_residual: Optional[float] = None
    max_iter: int = 200
    u_bracket_max: float = 1.0
    eps_terminal: float = 1e-9

    def __post_init__(self) -> None:
        if not self.tol_u > 0:
            raise DomainError("tol_u must be > 0")
        if self.tol_residual is not None and not self.tol_residual > 0:
            raise DomainError("tol_residual must be > 0")
        if self.max_iter < 1:
            raise DomainError("max_iter must be >= 1")
        if not self.u_bracket_max > 0:
            raise DomainError("u_bracket_max must be > 0")
        if not 0 < self.eps_terminal < 1:
            raise DomainError("eps_terminal must lie in (0, 1)")

    def residual_tol(self, material: MaterialSpec) -> float:
        if self.tol_residual is None:
            return 1e-10 * material.length_L
        return self.tol_residual


DEFAULT_CONFIG = SolverConfig()


def shape_function(u: float, k: float) -> float:
    """Left-hand side ``g(u)`` of the reduced equation."""
    if u >= _U_OVERFLOW:
        return 1.0 / k
    return 2.0 * math.sinh(0.5 * u) ** 2 / (1.0 + k * math.sinh(u))


def shape_function_slope(u: float, k: float) -> float:
    if u >= _U_OVERFLOW:
        return 0.0
    s = math.sinh(u)
    den = 1.0 + k * s
    return (s + 2.0 * k * math.sinh(0.5 * u) ** 2) / (den * den)


def _check_height(z1: float, material: MaterialSpec, cfg: SolverConfig) -> None:
    L = material.length_L
    if not math.isfinite(z1) or z1 < 0:
        raise DomainError(f"lift height must be >= 0, got {z1!r}")
    if z1 >= L:
        raise HeightOutOfRangeError(
            f"lift height {z1!r} >= L={L!r}: g(u) < 1/k has no root there")
    if z1 >= L * (1.0 - cfg.eps_terminal):
        raise HeightOutOfRangeError(
            f"lift height {z1!r} is inside the terminal cap; use the analytic terminal pose")


def _bracket(target: float, k: float, lo: float, hi: float) -> tuple:
    while shape_function(hi, k) < target:
        lo = hi
        hi *= 2.0
        if hi > _U_BRACKET_LIMIT:
            raise SolverError(f"could not bracket root for target {target!r}")
    return lo, hi


def bisect_shape_ratio(z1: float, material: MaterialSpec,
                       cfg: SolverConfig = DEFAULT_CONFIG) -> float:
    """Plain bisection reference for the shape ratio.

    Slower than :func:`solve_shape_ratio` but shares nothing with it beyond
    ``g`` itself; used to cross-check the production path.
    """
    _check_height(z1, material, cfg)
    if z1 == 0.0:
        return 0.0
    k = material.friction_k_covering
    target = z1 / (material.length_L * k)
    lo, hi = _bracket(target, k, 0.0, cfg.u_bracket_max)
    for _ in range(max(cfg.max_iter, 2000)):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if shape_function(mid, k) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo < cfg.tol_u:
            break
    return 0.5 * (lo + hi)


def _safeguarded_newton(target: float, k: float, lo: float, hi: float, u0: float,
                        cfg: SolverConfig) -> float:
    u = min(max(u0, lo), hi)
    for _ in range(cfg.max_iter):
        f = shape_function(u, k) - target
        if f == 0.0:
            return u
        if f < 0:
            lo = u
        else:
            hi = u
        slope = shape_function_slope(u, k)
        step_ok = slope > 0
        if step_ok:
            u_new = u - f / slope
            step_ok = lo < u_new < hi
        if not step_ok:
            u_new = 0.5 * (lo + hi)
        if abs(u_new - u) < 0.5 * cfg.tol_u or hi - lo < cfg.tol_u:
            return u_new
        u = u_new
    raise SolverError(f"no convergence in {cfg.max_iter} iterations (bracket [{lo}, {hi}])")


def solve_shape_ratio(z1: float, material: MaterialSpec,
                      cfg: SolverConfig = DEFAULT_CONFIG, *, u_lower: float = 0.0) -> float:
    """Solve ``g(u) = z1 / (L k)`` for the unique ``u >= 0``.

    ``u_lower`` is a known lower bound on the root (e.g. the root at a lower
    height); it seeds both the bracket and the Newton iterate.
    """
    _check_height(z1, material, cfg)
    if z1 == 0.0:
        return 0.0
    k = material.friction_k_covering
    target = z1 / (material.length_L * k)
    lo = u_lower if shape_function(u_lower, k) <= target else 0.0
    hi = max(cfg.u_bracket_max, 2.0 * lo)
    lo, hi = _bracket(target, k, lo, hi)
    return _safeguarded_newton(target, k, lo, hi, max(lo, u_lower), cfg)


def state_from_ratio(z1: float, u: float, material: MaterialSpec) -> CatenaryState:
    """Back-substitute a solved shape ratio into the full state."""
    L, q, k = material.length_L, material.weight_q, material.friction_k_covering
    if u == 0.0:
        a = L * k
        return CatenaryState(z1=z1, u=0.0, a=a, l1=0.0, L1=0.0, H=q * a, alpha=0.0)
    sh = math.sinh(u)
    a = L * k / (1.0 + k * sh)
    return CatenaryState(
        z1=z1, u=u, a=a, l1=a * u, L1=a * sh, H=q * a, alpha=tangent_angle(u))


def state_residuals(state: CatenaryState, material: MaterialSpec) -> tuple:
    """Residuals (height relation, friction balance) of a state, in metres."""
    L, k = material.length_L, material.friction_k_covering
    u, a = state.u, state.a
    height = 2.0 * a * math.sinh(0.5 * u) ** 2 - state.z1
    friction = a * (1.0 + k * math.sinh(u)) - L * k
    return height, friction


def _gate(state: CatenaryState, material: MaterialSpec, cfg: SolverConfig) -> CatenaryState:
    tol = cfg.residual_tol(material)
    r_height, r_friction = state_residuals(state, material)
    if not (abs(r_height) < tol and abs(r_friction) < tol):
        raise SolverError(
            f"residual gate failed at z1={state.z1!r}: "
            f"height {r_height:.3e}, friction {r_friction:.3e}, tol {tol:.3e}")
    return state


def solve_state(z1: float, material: MaterialSpec,
                cfg: SolverConfig = DEFAULT_CONFIG) -> CatenaryState:
    u = solve_shape_ratio(z1, material, cfg)
    return _gate(state_from_ratio(z1, u, material), material, cfg)


def solve_states_monotone(heights: Iterable[float], material: MaterialSpec,
                          cfg: SolverConfig = DEFAULT_CONFIG) -> List[CatenaryState]:
    """Solve a strictly increasing height sequence, warm-starting each root."""
    states: List[CatenaryState] = []
    prev_z, prev_u = -math.inf, 0.0
    for z1 in heights:
        if not z1 > prev_z:
            raise DomainError("heights must be strictly increasing")
        u = solve_shape_ratio(z1, material, cfg, u_lower=prev_u)
        states.append(_gate(state_from_ratio(z1, u, material), material, cfg))
        prev_z, prev_u = z1, u
    return states
