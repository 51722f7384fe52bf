import ast
import inspect
import math

import numpy as np
import pytest

from dexlift import oracle
from dexlift.errors import DomainError
from dexlift.model import MaterialSpec, Mode, Trajectory, Waypoint
from dexlift.oracle import chain_hang, verify_state, verify_trajectory
from dexlift.solver import solve_state
from dexlift.trajectory import TrajectoryRequest, generate_trajectory

from oracles import DEMO_HALF


def test_taut_limit():
    ch = chain_hang(1e6, 1.0, 1.0, 100)
    assert ch.endpoint == pytest.approx((1.0, 0.0), abs=1e-6)
    assert np.all(np.abs(ch.link_angles) < 1e-6)


def test_demo_chain_endpoint():
    ch = chain_hang(DEMO_HALF["a"], 1.0, DEMO_HALF["L1"], 10_000)
    assert ch.endpoint == pytest.approx((DEMO_HALF["l1"], 0.5), abs=1e-3)
    assert math.degrees(ch.endpoint_angle) == pytest.approx(81.7, abs=0.05)


def test_structure():
    ch = chain_hang(0.3, 2.0, 0.7, 257)
    seg = np.diff(ch.node_positions, axis=0)
    assert np.allclose(np.hypot(seg[:, 0], seg[:, 1]), ch.link_length, atol=1e-12, rtol=0)
    assert np.all(np.diff(ch.link_angles) >= 0)
    assert tuple(ch.node_positions[-1]) == ch.endpoint
    assert tuple(ch.node_positions[0]) == (0.0, 0.0)


def test_node_force_balance():
    q, h_tension = 1.3, 0.21
    ch = chain_hang(h_tension, q, 0.9, 500)
    t = ch.link_tensions(q)
    # tension is along each link
    assert np.allclose(np.arctan2(t[:, 1], t[:, 0]), ch.link_angles, atol=1e-14)
    assert np.all(t[:, 0] == h_tension)
    # each interior node carries one link of weight
    assert np.allclose(np.diff(t[:, 1]), q * ch.link_length, rtol=0, atol=1e-14)
    # bottom link carries the half link below its midpoint
    assert t[0, 1] == pytest.approx(0.5 * q * ch.link_length, rel=1e-14)


def test_second_order_convergence():
    errs = []
    for n in (250, 500, 1000):
        ch = chain_hang(DEMO_HALF["a"], 1.0, DEMO_HALF["L1"], n)
        errs.append(math.hypot(ch.endpoint[0] - DEMO_HALF["l1"], ch.endpoint[1] - 0.5))
    ratios = [errs[0] / errs[1], errs[1] / errs[2]]
    assert ratios == pytest.approx([4.0, 4.0], rel=0.02)


@pytest.mark.parametrize("args", [(0, 1, 1, 10), (1, 0, 1, 10), (1, 1, -1, 10), (1, 1, 1, 1)])
def test_domain(args):
    with pytest.raises(DomainError):
        chain_hang(*args)


def test_no_hyperbolic_functions_in_oracle():
    tree = ast.parse(inspect.getsource(oracle))
    names = {n.attr for n in ast.walk(tree) if isinstance(n, ast.Attribute)}
    names |= {n.id for n in ast.walk(tree) if isinstance(n, ast.Name)}
    assert not names & {"sinh", "cosh", "tanh", "arcsinh", "asinh", "arccosh", "acosh"}
    imported = {a.name for n in ast.walk(tree) if isinstance(n, ast.ImportFrom) for a in n.names}
    assert not imported & {"solve_state", "catenary_height", "hanging_arc_length", "tangent_angle"}


class TestVerifyState:
    def test_flat(self, demo):
        rep = verify_state(solve_state(0.0, demo), demo, 100)
        assert (rep.worst_pos_err, rep.worst_ang_err, rep.tension_err) == (0.0, 0.0, 0.0)

    def test_demo_half_height(self, demo):
        rep = verify_state(solve_state(0.5, demo), demo, 10_000)
        assert rep.worst_pos_err < 1e-3 * demo.L
        assert rep.tension_err < 1e-15
        assert rep.passed(1e-3, math.radians(0.1), 1e-12)

    def test_tension_balance_roundoff(self):
        for k in (0.1, 0.7, 2.5):
            m = MaterialSpec(0.8, 0.3, k)
            for z in (0.1, 0.4, 0.79):
                assert verify_state(solve_state(z, m), m, 100).tension_err < 1e-15

    def test_detects_wrong_state(self, demo):
        s = solve_state(0.5, demo)
        from dataclasses import replace

        rep = verify_state(replace(s, l1=s.l1 + 0.01), demo, 10_000)
        assert rep.worst_pos_err > 5e-3


class TestVerifyTrajectory:
    def test_single_flat(self, demo):
        s = solve_state(0.0, demo)
        wp = Waypoint(0.0, 1.0, 0.0, 0.0, (1.0, 0.0, 0.0, 0.0))
        traj = Trajectory(demo, Mode.DEXTEROUS, 0.1, (wp,), False, states=(s,))
        rep = verify_trajectory(traj, 100, 1)
        assert rep.passed(1e-12, 1e-12, 1e-12)

    def test_demo(self, demo):
        traj = generate_trajectory(TrajectoryRequest(demo))
        rep = verify_trajectory(traj, 5000, 50)
        assert rep.n_checked == 20
        assert rep.worst_pos_err < 1e-3 * demo.L

    def test_aggregate_is_max(self, demo):
        traj = generate_trajectory(TrajectoryRequest(demo, step_dz=0.05))
        agg = verify_trajectory(traj, 400, 3)
        for idx in range(0, len(traj), 3):
            st = traj.states[idx]
            if st is None:
                continue
            single = verify_state(st, demo, 400)
            assert agg.worst_pos_err >= single.worst_pos_err
            assert agg.worst_ang_err >= single.worst_ang_err
            assert agg.tension_err >= single.tension_err

    def test_detects_shifted_waypoint(self, demo):
        from dataclasses import replace

        traj = generate_trajectory(TrajectoryRequest(demo, step_dz=0.1))
        wps = list(traj.waypoints)
        wps[5] = replace(wps[5], x=wps[5].x + 0.01)
        bad = replace(traj, waypoints=tuple(wps))
        assert verify_trajectory(bad, 2000, 1).worst_pos_err > 5e-3

    def test_bad_stride(self, demo):
        traj = generate_trajectory(TrajectoryRequest(demo, step_dz=0.1))
        with pytest.raises(DomainError):
            verify_trajectory(traj, 100, 0)
