"""Exit criteria for the planner, one test per criterion.

Run ``pytest tests/test_acceptance.py -v``; a PASS/FAIL line per criterion is
printed in the terminal summary.
"""

import math
import random
import time

import pytest

from dexlift import cli, fileio
from dexlift.model import MaterialSpec, Mode
from dexlift.oracle import chain_hang, verify_state
from dexlift.presets import PRESETS
from dexlift.shape import shape_at, sweep_friction
from dexlift.solver import shape_function, solve_shape_ratio, solve_state
from dexlift.trajectory import TrajectoryRequest, generate_trajectory, height_grid

from oracles import bisect_u, reference_state

DEMO = MaterialSpec(1.0, 1.0, 0.2)


@pytest.mark.acceptance(1)
def test_demo_shapes():
    """Demo shapes at z1 = 0.25/0.5/0.75: length 1 +- 1e-6, naive slip grows, dexterous end at 0 +- 1e-9, < 1 s"""
    t0 = time.perf_counter()
    heights = (0.25, 0.5, 0.75)
    naive = [shape_at(z, DEMO, Mode.VERTICAL_NAIVE) for z in heights]
    dext = [shape_at(z, DEMO, Mode.DEXTEROUS) for z in heights]
    elapsed = time.perf_counter() - t0

    for shp in naive + dext:
        assert abs(shp.polyline_length() - 1.0) <= 1e-6
    slips = [shp.far_end[0] for shp in naive]
    assert slips[0] < slips[1] < slips[2]
    for shp in dext:
        assert abs(shp.far_end[0]) <= 1e-9
    assert elapsed < 1.0


def _pos_err(state, n):
    ch = chain_hang(state.H, DEMO.q, state.L1, n)
    return math.hypot(ch.endpoint[0] - state.l1, ch.endpoint[1] - state.z1)


@pytest.mark.acceptance(2)
def test_oracle_equivalence():
    """Chain n=1e4 matches closed form at 20 heights in (0, 0.999L): 1e-3 L, 0.1 deg; order >= 1.8; < 10 s"""
    t0 = time.perf_counter()
    heights = [0.999 * DEMO.L * j / 21 for j in range(1, 21)]
    for z in heights:
        state = solve_state(z, DEMO)
        rep = verify_state(state, DEMO, 10_000)
        assert rep.worst_pos_err < 1e-3 * DEMO.L, z
        assert math.degrees(rep.worst_ang_err) < 0.1, z
        errs = [_pos_err(state, n) for n in (250, 500, 1000, 2000)]
        orders = [math.log2(a / b) for a, b in zip(errs, errs[1:])]
        assert min(orders) >= 1.8, (z, orders)
    # the upper end itself: position and angle only
    top = verify_state(solve_state(0.999 * DEMO.L, DEMO), DEMO, 10_000)
    assert top.worst_pos_err < 1e-3 * DEMO.L
    assert math.degrees(top.worst_ang_err) < 0.1
    assert time.perf_counter() - t0 < 10.0


@pytest.mark.acceptance(3)
def test_root_uniqueness_and_monotonicity():
    """1000 random (z1, k, L): reduced-equation residual < 1e-10, u strictly increasing in z1; < 5 s"""
    rng = random.Random(2024)
    t0 = time.perf_counter()
    for _ in range(1000):
        k = rng.uniform(0.05, 5.0)
        L = rng.uniform(0.1, 5.0)
        m = MaterialSpec(L, 1.0, k)
        z_lo = rng.uniform(0.0, 0.998) * L
        z_hi = z_lo + rng.uniform(1e-4, 0.999 - z_lo / L) * L
        u_lo = solve_shape_ratio(z_lo, m)
        u_hi = solve_shape_ratio(z_hi, m)
        for z, u in ((z_lo, u_lo), (z_hi, u_hi)):
            assert abs(shape_function(u, k) - z / (L * k)) < 1e-10
        assert u_lo < u_hi
    assert time.perf_counter() - t0 < 5.0


@pytest.mark.acceptance(4)
def test_endpoint_limits():
    """Flat state exact; terminal waypoint (0, L, 90 deg); z1 = L(1 - 1e-6) gives L1 within 2% of L"""
    flat = solve_state(0.0, DEMO)
    assert (flat.u, flat.alpha, flat.a) == (0.0, 0.0, DEMO.L * DEMO.k)
    traj = generate_trajectory(TrajectoryRequest(DEMO))
    first, last = traj.waypoints[0], traj.waypoints[-1]
    assert first.x == DEMO.L
    assert (last.x, last.z, last.alpha) == (0.0, DEMO.L, math.pi / 2)
    near = solve_state(DEMO.L * (1 - 1e-6), DEMO)
    assert abs(near.L1 - DEMO.L) <= 0.02 * DEMO.L


@pytest.mark.acceptance(5)
def test_trajectory_integrity():
    """Demo dexterous trajectory at step 0.001: monotone z, alpha, x; unit quaternions; w >= 0; byte-identical"""
    req = TrajectoryRequest(DEMO, step_dz=0.001)
    traj = generate_trajectory(req)
    wps = traj.waypoints
    for a, b in zip(wps, wps[1:]):
        assert b.z > a.z and b.alpha > a.alpha and b.x < a.x
        assert sum(p * q for p, q in zip(a.quat, b.quat)) > 0
    for wp in wps:
        assert abs(math.sqrt(sum(c * c for c in wp.quat)) - 1.0) <= 1e-12
        assert wp.quat[0] >= 0
    again = generate_trajectory(req)
    assert fileio.render_waypoints(traj, "csv").encode() == fileio.render_waypoints(again, "csv").encode()
    assert fileio.render_waypoints(traj, "jsonl").encode() == fileio.render_waypoints(again, "jsonl").encode()


@pytest.mark.acceptance(6)
def test_friction_sweep():
    """k in {0.1, 0.2, 3} at z1 = 0.5: alpha strictly decreasing (bisection-checked); envelopes over 0.1..3 non-degenerate"""
    ks = (0.1, 0.2, 3.0)
    table = sweep_friction(DEMO, list(ks), [0.5])
    alphas = [table.cell(k, 0.5).alpha for k in ks]
    expected = [math.atan(math.sinh(bisect_u(0.5, 1.0, k))) for k in ks]
    assert alphas == pytest.approx(expected, abs=1e-12)
    assert alphas[0] > alphas[1] > alphas[2]

    k_grid = [0.1 + (3.0 - 0.1) * i / 29 for i in range(30)]
    heights = height_grid(DEMO.L, 0.01, 1e-9)
    wide = sweep_friction(DEMO, k_grid, heights)
    assert all(c.ok for c in wide.cells)
    for env in wide.envelopes:
        if env.z1 > 0:
            assert env.alpha_width > 0 and env.x_width > 0
    # spot-check an envelope edge against the oracle
    ref = reference_state(0.5, 1.0, 1.0, 0.1)
    assert wide.envelope_at(heights[50]).alpha_max == pytest.approx(ref["alpha"], abs=1e-12)


@pytest.mark.acceptance(7)
def test_cli_contract(tmp_path, capsys):
    """CLI exit codes 0/2/3/4, bit-exact waypoint round trip, presets 1-4 with k = 1.54/1.71/1.49/1.38"""
    out = tmp_path / "w.csv"
    assert cli.main(["plan", "--preset", "demo", "--out", str(out)]) == 0
    assert cli.main(["plan", "--L", "1", "--q", "1", "--k", "0.2", "--step", "2",
                     "--out", str(tmp_path / "x.csv")]) == 2
    assert cli.main(["plan", "--preset", "demo", "--tol-res", "1e-30",
                     "--out", str(tmp_path / "y.csv")]) == 3
    assert cli.main(["verify", "--preset", "demo", "--n", "2"]) == 4
    assert cli.main(["verify", "--preset", "demo", "--n", "5000", "--stride", "50"]) == 0
    capsys.readouterr()

    traj = generate_trajectory(TrajectoryRequest(DEMO))
    for fmt in fileio.FORMATS:
        path = fileio.write_waypoints(tmp_path / f"rt.{fmt}", traj, fmt)
        back = fileio.read_waypoints(path)
        assert [(w.z1, w.x, w.z, w.alpha, w.quat) for w in back] == [
            (w.z1, w.x, w.z, w.alpha, w.quat) for w in traj.waypoints]
    assert [PRESETS[f"m{i}"].material.k for i in range(1, 5)] == [1.54, 1.71, 1.49, 1.38]
