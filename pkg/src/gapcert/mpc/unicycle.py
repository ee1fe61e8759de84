import math
from dataclasses import dataclass

import numpy as np

from gapcert.config import WaypointProblemParams

TWO_PI = 2.0 * math.pi
STATE_LOWER = (-1.6, -1.2)
STATE_UPPER = (1.6, 1.2)
DEFAULT_PARAMS = WaypointProblemParams()


def wrap_angle(theta):
    """Wrap to [0, 2*pi)."""
    return np.mod(theta, TWO_PI)


def heading_error(raw):
    """Wrap to (-pi, pi]."""
    return math.pi - np.mod(math.pi - raw, TWO_PI)


@dataclass(frozen=True)
class UnicycleState:
    x: float
    y: float
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", float(wrap_angle(self.theta)))

    @property
    def position(self):
        return np.array([self.x, self.y])

    def in_bounds(self):
        return STATE_LOWER[0] <= self.x <= STATE_UPPER[0] and STATE_LOWER[1] <= self.y <= STATE_UPPER[1]

    def to_list(self):
        return [self.x, self.y, self.theta]


@dataclass(frozen=True)
class ControlInput:
    v: float
    omega: float


def step_arrays(x, y, theta, v, omega, dt):
    return x + v * np.cos(theta) * dt, y + v * np.sin(theta) * dt, wrap_angle(theta + omega * dt)


def control_arrays(x, y, theta, wx, wy, params):
    dx = wx - x
    dy = wy - y
    dist = np.hypot(dx, dy)
    error = heading_error(np.arctan2(dy, dx) - theta)
    v = np.clip(params.k_v * dist * np.cos(error), -params.v_max, params.v_max)
    omega = np.clip(params.k_omega * error, -params.omega_max, params.omega_max)
    # at the waypoint
    parked = dist < 1e-6
    return np.where(parked, 0.0, v), np.where(parked, 0.0, omega)


def dynamics_step(state, control, dt=DEFAULT_PARAMS.dt):
    """Unicycle update; the state is not clamped to the workspace."""
    x, y, theta = step_arrays(state.x, state.y, state.theta, control.v, control.omega, dt)
    return UnicycleState(float(x), float(y), float(theta))


def lyapunov_controller(state, waypoint, params=DEFAULT_PARAMS):
    """Proportional heading/velocity law steering toward ``waypoint``,
    saturated to the input bounds."""
    v, omega = control_arrays(state.x, state.y, state.theta, float(waypoint[0]), float(waypoint[1]), params)
    return ControlInput(float(v), float(omega))
