"""Waypoint, shape and sweep file formats.

Every format is line oriented.  CSV files carry one header row; JSONL files
carry one object per line with the same keys.  Floats are written with
``repr``, the shortest decimal that reads back to the identical double, so a
write/read round trip is bit exact.

Waypoint columns, in order::

    z1, x, z, alpha_rad, qw, qx, qy, qz
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path
from typing import Iterable, List, Sequence

from .errors import ConfigError
from .model import Trajectory, Waypoint
from .shape import MaterialShape, SweepTable

WAYPOINT_FIELDS = ("z1", "x", "z", "alpha_rad", "qw", "qx", "qy", "qz")
SHAPE_FIELDS = ("series", "mode", "z1", "index", "x", "z")
SWEEP_FIELDS = ("k", "z1", "x", "z", "alpha_rad", "ok",
                "x_min", "x_max", "alpha_min", "alpha_max")
FORMATS = ("csv", "jsonl")


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _render(rows: Iterable[dict], fields: Sequence[str], fmt: str) -> str:
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(fields)
        for row in rows:
            w.writerow([_fmt(row[f]) for f in fields])
    elif fmt == "jsonl":
        for row in rows:
            buf.write(json.dumps({f: row[f] for f in fields}))
            buf.write("\n")
    else:
        raise ConfigError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    return buf.getvalue()


def atomic_write_text(path: Path | str, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def waypoint_rows(waypoints: Iterable[Waypoint]) -> List[dict]:
    rows = []
    for wp in waypoints:
        qw, qx, qy, qz = wp.quat
        rows.append({"z1": float(wp.z1), "x": float(wp.x), "z": float(wp.z),
                     "alpha_rad": float(wp.alpha),
                     "qw": float(qw), "qx": float(qx), "qy": float(qy), "qz": float(qz)})
    return rows


def render_waypoints(traj: Trajectory, fmt: str = "csv") -> str:
    return _render(waypoint_rows(traj.waypoints), WAYPOINT_FIELDS, fmt)


def write_waypoints(path: Path | str, traj: Trajectory, fmt: str = "csv") -> Path:
    return atomic_write_text(path, render_waypoints(traj, fmt))


def read_waypoints(path: Path | str, fmt: str | None = None) -> List[Waypoint]:
    path = Path(path)
    fmt = fmt or ("jsonl" if path.suffix == ".jsonl" else "csv")
    text = path.read_text()
    if fmt == "csv":
        reader = csv.DictReader(io.StringIO(text))
        if tuple(reader.fieldnames or ()) != WAYPOINT_FIELDS:
            raise ConfigError(f"{path}: unexpected header {reader.fieldnames}")
        records = [{k: float(v) for k, v in row.items()} for row in reader]
    elif fmt == "jsonl":
        records = [json.loads(line) for line in text.splitlines() if line.strip()]
    else:
        raise ConfigError(f"unknown format {fmt!r}")
    return [
        Waypoint(z1=r["z1"], x=r["x"], z=r["z"], alpha=r["alpha_rad"],
                 quat=(r["qw"], r["qx"], r["qy"], r["qz"]))
        for r in records
    ]


def render_shapes(shapes: Sequence[MaterialShape], fmt: str = "csv") -> str:
    rows = []
    for series, shp in enumerate(shapes):
        for idx, (x, z) in enumerate(shp.samples.tolist()):
            rows.append({"series": series, "mode": shp.mode.value, "z1": float(shp.z1),
                         "index": idx, "x": x, "z": z})
    return _render(rows, SHAPE_FIELDS, fmt)


def render_sweep(table: SweepTable, fmt: str = "csv") -> str:
    env = {e.z1: e for e in table.envelopes}
    rows = []
    for c in table.cells:
        e = env[c.z1]
        rows.append({"k": float(c.k), "z1": float(c.z1), "x": c.x, "z": c.z,
                     "alpha_rad": c.alpha, "ok": c.ok,
                     "x_min": e.x_min, "x_max": e.x_max,
                     "alpha_min": e.alpha_min, "alpha_max": e.alpha_max})
    return _render(rows, SWEEP_FIELDS, fmt)


def max_alpha_step(waypoints: Sequence[Waypoint]) -> float:
    if len(waypoints) < 2:
        return 0.0
    return max(abs(b.alpha - a.alpha) for a, b in zip(waypoints, waypoints[1:]))
