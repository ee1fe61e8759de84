import csv
import logging
from pathlib import Path

import numpy as np

from gapcert.certifiers.repetitive import ProblemFamily
from gapcert.mpc.environment import barrier_arrays, sample_environment
from gapcert.mpc.unicycle import DEFAULT_PARAMS, STATE_LOWER, STATE_UPPER, control_arrays, step_arrays
from gapcert.percentile.problem import Problem
from gapcert.percentile.spaces import AnnulusSpace

logger = logging.getLogger(__name__)

TRACE_HEADER = ["j", "x", "y", "theta", "v", "omega", "h"]


def rollout(x_k, waypoints, env, params=DEFAULT_PARAMS):
    """Closed-loop prediction toward each waypoint, the uncontrolled agent held
    static.

    Returns per-step arrays of shape (n, horizon) for x, y, theta, v, omega and
    the barrier value h after each step.
    """
    waypoints = np.atleast_2d(np.asarray(waypoints, dtype=float))
    n = waypoints.shape[0]
    x = np.full(n, float(x_k.x))
    y = np.full(n, float(x_k.y))
    theta = np.full(n, float(x_k.theta))
    trace = {key: np.empty((n, params.horizon)) for key in TRACE_HEADER[1:]}
    for j in range(params.horizon):
        v, omega = control_arrays(x, y, theta, waypoints[:, 0], waypoints[:, 1], params)
        x, y, theta = step_arrays(x, y, theta, v, omega, params.dt)
        trace["x"][:, j] = x
        trace["y"][:, j] = y
        trace["theta"][:, j] = theta
        trace["v"][:, j] = v
        trace["omega"][:, j] = omega
        trace["h"][:, j] = barrier_arrays(np.column_stack([x, y]), env.x_o, env, params)
    return trace


def rollouts_feasible(x_k, waypoints, env, params=DEFAULT_PARAMS):
    return np.all(rollout(x_k, waypoints, env, params)["h"] >= 0.0, axis=1)


def rollout_feasible(x_k, w, env, params=DEFAULT_PARAMS):
    """True iff the barrier stays non-negative over the whole horizon."""
    return bool(rollouts_feasible(x_k, np.asarray(w, dtype=float)[None, :], env, params)[0])


def rollout_trace(x_k, w, env, params=DEFAULT_PARAMS):
    trace = rollout(x_k, np.asarray(w, dtype=float)[None, :], env, params)
    return [
        [j + 1] + [float(trace[key][0, j]) for key in TRACE_HEADER[1:]]
        for j in range(params.horizon)
    ]


def write_rollout_trace(x_k, w, env, path, params=DEFAULT_PARAMS):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(TRACE_HEADER)
        for row in rollout_trace(x_k, w, env, params):
            writer.writerow([row[0]] + [repr(value) for value in row[1:]])
    return path


def augmented_costs(waypoints, env, x_k, params=DEFAULT_PARAMS):
    waypoints = np.atleast_2d(np.asarray(waypoints, dtype=float))
    table = env.goal_distances(params.unreachable)
    cells = env.grid.cell_index(waypoints)
    distance = np.where(cells >= 0, table[np.maximum(cells, 0)], params.unreachable)
    feasible = rollouts_feasible(x_k, waypoints, env, params)
    # an obstacle-cell waypoint can still leave a short rollout feasible
    return np.where(feasible & (distance < params.unreachable), distance, params.penalty)


def augmented_cost(w, env, x_k, params=DEFAULT_PARAMS):
    """Shortest grid distance from ``w`` to a goal when the rollout toward it
    is safe, otherwise the penalty."""
    return float(augmented_costs(np.asarray(w, dtype=float)[None, :], env, x_k, params)[0])


class WaypointCost:

    name = "waypoint"

    def __init__(self, env, x_k, params=DEFAULT_PARAMS):
        self.env = env
        self.x_k = x_k
        self.params = params

    def __call__(self, w):
        return augmented_cost(w, self.env, self.x_k, self.params)

    def batch(self, waypoints):
        return augmented_costs(waypoints, self.env, self.x_k, self.params)


def waypoint_space(x_k, params=DEFAULT_PARAMS):
    return AnnulusSpace(x_k.position, params.annulus_min, params.annulus_max, STATE_LOWER, STATE_UPPER)


def waypoint_sampler(x_k, seed, n=1, params=DEFAULT_PARAMS):
    """``n`` waypoints uniform by area over the annulus around the agent,
    clipped to the workspace."""
    return waypoint_space(x_k, params).sample(n, seed)


def make_waypoint_problem(env, params=DEFAULT_PARAMS):
    return Problem(
        waypoint_space(env.x_a, params),
        WaypointCost(env, env.x_a, params),
        name=f"mpc-env{env.seed}",
        bounds=(0.0, params.penalty),
    )


class _RandomEnvironment:

    def __init__(self, params):
        self.params = params

    def __call__(self, seed):
        return make_waypoint_problem(sample_environment(seed, self.params), self.params)


def mpc_family(params=DEFAULT_PARAMS):
    """Waypoint problems over freshly sampled environments, one per instance
    seed, each starting from the environment's agent state."""
    return ProblemFamily(
        _RandomEnvironment(params),
        f"mpc horizon={params.horizon} obstacles={params.n_obstacles} goals={params.n_goals}",
    )
