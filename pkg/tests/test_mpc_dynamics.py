import math

import pytest

from gapcert.mpc import ControlInput, UnicycleState, dynamics_step, lyapunov_controller
from gapcert.mpc.unicycle import heading_error


def test_theta_wraps_into_one_turn():
    assert UnicycleState(0.0, 0.0, -math.pi / 2).theta == pytest.approx(3 * math.pi / 2)
    assert UnicycleState(0.0, 0.0, 2 * math.pi).theta == pytest.approx(0.0)


step_cases = [
    (UnicycleState(0.0, 0.0, 0.0), ControlInput(0.2, 0.0), (0.0066, 0.0, 0.0)),
    (UnicycleState(0.0, 0.0, math.pi / 2), ControlInput(0.1, 0.0), (0.0, 0.0033, math.pi / 2)),
    (UnicycleState(1.0, -1.0, 0.0), ControlInput(0.0, -1.0), (1.0, -1.0, 2 * math.pi - 0.033)),
]


@pytest.mark.parametrize("state, control, expected", step_cases)
def test_dynamics_step(state, control, expected):
    after = dynamics_step(state, control)
    assert after.to_list() == pytest.approx(list(expected), abs=1e-12)


def test_dynamics_step_leaves_the_workspace_unclamped():
    after = dynamics_step(UnicycleState(1.6, 0.0, 0.0), ControlInput(0.2, 0.0))
    assert after.x > 1.6
    assert not after.in_bounds()


controller_cases = [
    ((1.0, 0.0), 0.2, 0.0),
    ((0.05, 0.0), 0.1, 0.0),
    ((-1.0, 0.0), -0.2, math.pi),
    ((0.0, 1.0), 0.0, math.pi),
    ((0.0, 0.0), 0.0, 0.0),
]


@pytest.mark.parametrize("waypoint, v, omega", controller_cases)
def test_controller(waypoint, v, omega):
    control = lyapunov_controller(UnicycleState(0.0, 0.0, 0.0), waypoint)
    assert control.v == pytest.approx(v, abs=1e-12)
    assert control.omega == pytest.approx(omega, abs=1e-12)


@pytest.mark.parametrize("raw", [-7.0, -math.pi, 0.0, math.pi, 4.0, 10.0])
def test_heading_error_range(raw):
    error = heading_error(raw)
    assert -math.pi < error <= math.pi
    assert math.isclose(math.cos(error), math.cos(raw), abs_tol=1e-12)


@pytest.mark.parametrize("state", [UnicycleState(0.0, 0.0, 0.0), UnicycleState(-1.2, 0.7, 2.5)])
def test_zero_input_is_a_fixed_point(state):
    assert dynamics_step(state, ControlInput(0.0, 0.0)) == state
