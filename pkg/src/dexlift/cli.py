"""Command-line front end.

Subcommands: ``plan``, ``shape``, ``sweep``, ``verify`` and ``presets``.
Exit codes: 0 success, 2 configuration error, 3 solver failure,
4 verification failure.

Any flag may also come from a ``--config`` file of ``key = value`` lines
(``#`` starts a comment; keys are flag names without the leading dashes).
Flags given on the command line win over the file.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import fileio
from .errors import (
    ConfigError,
    DexliftError,
    DomainError,
    HeightOutOfRangeError,
    SingularStateError,
    SolverError,
)
from .model import MaterialSpec, Mode
from .oracle import verify_trajectory
from .presets import PRESETS, get_preset
from .shape import shape_at, sweep_friction
from .solver import SolverConfig
from .trajectory import TrajectoryRequest, generate_trajectory, height_grid

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_VERIFY = 4

OUTPUT_DIR_ENV = "DEXLIFT_OUTPUT_DIR"


class VerificationFailed(DexliftError):
    pass


def read_config_file(path: Path | str) -> Dict[str, str]:
    values: Dict[str, str] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key.lstrip("-").replace("-", "_")] = value
    return values


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse already exits 2; keep stderr terse
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value file; flags override it")
    p.add_argument("--preset", help=f"material preset ({', '.join(PRESETS)})")
    p.add_argument("--L", dest="L", type=float, help="material length [m]")
    p.add_argument("--q", dest="q", type=float, help="weight per length [N/m]")
    p.add_argument("--k", dest="k", type=float, help="friction with the covering")
    p.add_argument("--f", dest="f", type=float, help="friction with the gripper")
    p.add_argument("--format", choices=fileio.FORMATS)
    p.add_argument("--out", help=f"output file (default under ${OUTPUT_DIR_ENV} or cwd)")
    p.add_argument("--tol-u", dest="tol_u", type=float)
    p.add_argument("--tol-res", dest="tol_res", type=float)
    p.add_argument("--plot", action="store_const", const=True, default=None,
                   help="also render a PNG figure next to the output file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dexlift", description="Slip-free lifting planner for sheet materials.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    plan = sub.add_parser("plan", help="generate gripper waypoints")
    _common(plan)
    plan.add_argument("--step", type=float, help="lift height step [m] (default 0.001)")
    plan.add_argument("--mode", choices=[m.value for m in Mode])
    plan.add_argument("--no-terminal", dest="no_terminal", action="store_const",
                      const=True, default=None, help="omit the analytic terminal pose")

    shape = sub.add_parser("shape", help="material shape polylines at given heights")
    _common(shape)
    shape.add_argument("--heights", help="comma-separated lift heights [m]")
    shape.add_argument("--mode", choices=[m.value for m in Mode] + ["both"])
    shape.add_argument("--samples", type=int, help="minimum samples per series (default 2001)")

    sweep = sub.add_parser("sweep", help="trajectory parameters over a friction range")
    _common(sweep)
    sweep.add_argument("--k-range", dest="k_range", help="min:max:count (default 0.1:3:30)")
    sweep.add_argument("--heights", help="comma-separated lift heights [m]")
    sweep.add_argument("--step", type=float, help="height grid step when --heights is absent")

    verify = sub.add_parser("verify", help="check a planned trajectory against a chain model")
    _common(verify)
    verify.add_argument("--step", type=float)
    verify.add_argument("--n", type=int, help="links per chain (default 5000)")
    verify.add_argument("--stride", type=int, help="check every stride-th waypoint (default 50)")
    verify.add_argument("--pos-tol", dest="pos_tol", type=float, help="default 1e-3 * L")
    verify.add_argument("--ang-tol-deg", dest="ang_tol_deg", type=float, help="default 0.1")

    sub.add_parser("presets", help="list material presets")
    return parser


_CASTS = {
    "L": float, "q": float, "k": float, "f": float, "tol_u": float, "tol_res": float,
    "step": float, "n": int, "stride": int, "samples": int,
    "pos_tol": float, "ang_tol_deg": float,
}
_FLAGS = {"plot", "no_terminal"}


def merge_config(args: argparse.Namespace) -> argparse.Namespace:
    """Fill unset flags from the ``--config`` file, if any."""
    if not getattr(args, "config", None):
        return args
    for key, raw in read_config_file(args.config).items():
        if key == "config" or not hasattr(args, key):
            raise ConfigError(f"unknown config key {key!r} for '{args.command}'")
        if getattr(args, key) is not None:
            continue
        if key in _FLAGS:
            value = raw.lower() in ("1", "true", "yes", "on")
        elif key in _CASTS:
            try:
                value = _CASTS[key](raw)
            except ValueError:
                raise ConfigError(f"config key {key!r}: bad value {raw!r}") from None
        else:
            value = raw
        setattr(args, key, value)
    return args


def material_from_args(args: argparse.Namespace) -> MaterialSpec:
    inline = [args.L, args.q, args.k]
    if args.preset is not None:
        if any(v is not None for v in inline + [args.f]):
            raise ConfigError("give either --preset or --L/--q/--k, not both")
        return get_preset(args.preset).material
    if any(v is None for v in inline):
        raise ConfigError("material needs --preset or all of --L, --q, --k")
    try:
        return MaterialSpec(args.L, args.q, args.k, args.f if args.f is not None else 0.0)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None


def solver_from_args(args: argparse.Namespace) -> SolverConfig:
    kwargs = {}
    if args.tol_u is not None:
        kwargs["tol_u"] = args.tol_u
    if args.tol_res is not None:
        kwargs["tol_residual"] = args.tol_res
    try:
        return SolverConfig(**kwargs)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None


def parse_heights(text: str, length: float) -> List[float]:
    try:
        heights = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ConfigError(f"bad --heights {text!r}") from None
    if not heights:
        raise ConfigError("--heights is empty")
    for h in heights:
        if not 0 <= h < length:
            raise ConfigError(f"height {h!r} outside [0, L={length})")
    return heights


def parse_k_range(text: str) -> List[float]:
    try:
        lo, hi, count = text.split(":")
        lo, hi, n = float(lo), float(hi), int(count)
    except ValueError:
        raise ConfigError(f"--k-range must be min:max:count, got {text!r}") from None
    if n < 1 or not 0 < lo <= hi:
        raise ConfigError(f"--k-range needs 0 < min <= max and count >= 1, got {text!r}")
    if n == 1:
        return [lo]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def output_path(args: argparse.Namespace, stem: str) -> Path:
    if args.out:
        return Path(args.out)
    base = Path(os.environ.get(OUTPUT_DIR_ENV, "."))
    return base / f"{stem}.{args.format}"


def _figure_path(path: Path) -> Path:
    return path.with_suffix(".png")


def cmd_plan(args: argparse.Namespace) -> int:
    material = material_from_args(args)
    step = args.step if args.step is not None else 0.001
    try:
        req = TrajectoryRequest(
            material=material,
            step_dz=step,
            mode=Mode.parse(args.mode or Mode.DEXTEROUS.value),
            include_terminal=not args.no_terminal,
            solver=solver_from_args(args),
        )
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    traj = generate_trajectory(req)
    out = fileio.write_waypoints(output_path(args, "waypoints"), traj, args.format)
    last = traj.waypoints[-1]
    print(f"material: {material.label or 'inline'} (L={material.length_L:g} m, "
          f"q={material.weight_q:g} N/m, k={material.friction_k_covering:g})")
    print(f"mode: {traj.mode.value}")
    print(f"waypoints: {len(traj.waypoints)}")
    print(f"terminal pose: x={last.x:.6f} m, z={last.z:.6f} m, "
          f"alpha={math.degrees(last.alpha):.4f} deg")
    print(f"max alpha step: {math.degrees(fileio.max_alpha_step(traj.waypoints)):.4f} deg")
    print(f"output: {out}")
    if args.plot:
        from .plotting import plot_trajectory
        print(f"figure: {plot_trajectory(traj, _figure_path(out))}")
    return EXIT_OK


def cmd_shape(args: argparse.Namespace) -> int:
    material = material_from_args(args)
    cfg = solver_from_args(args)
    heights = parse_heights(args.heights or "0.25,0.5,0.75", material.length_L)
    mode = args.mode or Mode.VERTICAL_NAIVE.value
    modes = list(Mode) if mode == "both" else [Mode.parse(mode)]
    samples = args.samples if args.samples is not None else 2001
    if samples < 2:
        raise ConfigError("--samples must be >= 2")
    shapes = [shape_at(z1, material, m, samples, cfg) for m in modes for z1 in heights]
    out = fileio.atomic_write_text(output_path(args, "shapes"),
                                   fileio.render_shapes(shapes, args.format))
    for shp in shapes:
        fx, _ = shp.far_end
        print(f"{shp.mode.value} z1={shp.z1:g}: far end x={fx:.6f} m, "
              f"lying={shp.lying_length:.6f} m, length={shp.polyline_length():.9f} m")
    print(f"output: {out}")
    if args.plot:
        from .plotting import plot_shapes
        print(f"figure: {plot_shapes(shapes, _figure_path(out))}")
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    material = material_from_args(args)
    cfg = solver_from_args(args)
    k_values = parse_k_range(args.k_range or "0.1:3:30")
    if args.heights:
        heights = parse_heights(args.heights, material.length_L)
    else:
        step = args.step if args.step is not None else material.length_L / 100
        if not 0 < step < material.length_L:
            raise ConfigError(f"--step must satisfy 0 < step < L, got {step!r}")
        heights = height_grid(material.length_L, step, cfg.eps_terminal)
    table = sweep_friction(material, k_values, heights, cfg)
    out = fileio.atomic_write_text(output_path(args, "sweep"),
                                   fileio.render_sweep(table, args.format))
    failed = sum(1 for c in table.cells if not c.ok)
    print(f"k values: {len(k_values)}  heights: {len(heights)}  cells: {len(table.cells)}"
          f"  failed: {failed}")
    print(f"output: {out}")
    if args.plot:
        from .plotting import plot_sweep
        print(f"figure: {plot_sweep(table, _figure_path(out))}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    material = material_from_args(args)
    n = args.n if args.n is not None else 5000
    stride = args.stride if args.stride is not None else 50
    if n < 2 or stride < 1:
        raise ConfigError("--n must be >= 2 and --stride >= 1")
    step = args.step if args.step is not None else 0.001
    try:
        req = TrajectoryRequest(material=material, step_dz=step, solver=solver_from_args(args))
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    traj = generate_trajectory(req)
    report = verify_trajectory(traj, n, stride)
    L, q = material.length_L, material.weight_q
    pos_tol = args.pos_tol if args.pos_tol is not None else 1e-3 * L
    ang_tol = math.radians(args.ang_tol_deg if args.ang_tol_deg is not None else 0.1)
    ten_tol = 1e-9 * q * L
    passed = report.passed(pos_tol, ang_tol, ten_tol)
    doc = report.to_dict()
    doc.update({
        "passed": passed,
        "n": n,
        "stride": stride,
        "thresholds": {"pos": pos_tol, "ang": ang_tol, "tension": ten_tol},
    })
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        fileio.atomic_write_text(args.out, text)
    sys.stdout.write(text)
    if not passed:
        raise VerificationFailed(
            f"worst position error {report.worst_pos_err:.3e} m, "
            f"angle error {math.degrees(report.worst_ang_err):.3e} deg")
    return EXIT_OK


def cmd_presets(args: argparse.Namespace) -> int:
    for name, p in PRESETS.items():
        m = p.material
        extra = ""
        if p.raw_weight_g_per_cm2 is not None:
            extra = f"  raw weight {p.raw_weight_g_per_cm2} g/cm^2"
        print(f"{name:5s} L={m.length_L:g} m  q={m.weight_q:.6g} N/m  "
              f"k={m.friction_k_covering:g}  f={m.friction_f_gripper:g}  {m.label}{extra}")
    return EXIT_OK


COMMANDS = {
    "plan": cmd_plan,
    "shape": cmd_shape,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "presets": cmd_presets,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command != "presets":
            merge_config(args)
            if args.format is None:
                args.format = "csv"
            elif args.format not in fileio.FORMATS:
                raise ConfigError(f"unknown format {args.format!r}")
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"dexlift: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SolverError, HeightOutOfRangeError, SingularStateError) as exc:
        print(f"dexlift: solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except VerificationFailed as exc:
        print(f"dexlift: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except DomainError as exc:
        print(f"dexlift: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
