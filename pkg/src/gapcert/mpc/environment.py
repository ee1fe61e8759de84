import json
import logging
from collections import deque
from pathlib import Path

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import dijkstra

from gapcert.errors import DomainError, SamplingError
from gapcert.mpc.unicycle import DEFAULT_PARAMS, STATE_LOWER, STATE_UPPER, TWO_PI, UnicycleState
from gapcert.percentile.seeding import rng_for

logger = logging.getLogger(__name__)


class Grid:
    """8x5 cell overlay of the workspace. Cells are (col, row) pairs; points on
    a shared cell boundary belong to the lower-index cell."""

    def __init__(self, cols=8, rows=5, lower=STATE_LOWER, upper=STATE_UPPER):
        self.cols = cols
        self.rows = rows
        self.lower = np.asarray(lower, dtype=float)
        self.upper = np.asarray(upper, dtype=float)
        self.cell_size = (self.upper - self.lower) / np.array([cols, rows])
        # snapped to 12 decimals, linspace leaves round-off on interior edges
        self.edges = [
            np.round(np.linspace(self.lower[axis], self.upper[axis], count + 1), 12)
            for axis, count in enumerate((cols, rows))
        ]

    @property
    def size(self):
        return self.cols * self.rows

    def flat(self, col, row):
        return row * self.cols + col

    def unflat(self, index):
        return int(index) % self.cols, int(index) // self.cols

    def cell_index(self, points):
        """Flat cell index of each point, -1 outside the workspace."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        col = np.searchsorted(self.edges[0], points[:, 0], side="left") - 1
        row = np.searchsorted(self.edges[1], points[:, 1], side="left") - 1
        col = np.clip(col, 0, self.cols - 1)
        row = np.clip(row, 0, self.rows - 1)
        inside = np.all((points >= self.lower) & (points <= self.upper), axis=1)
        return np.where(inside, row * self.cols + col, -1)

    def center(self, index):
        col, row = self.unflat(index)
        return self.lower + (np.array([col, row]) + 0.5) * self.cell_size

    def neighbours(self, index):
        col, row = self.unflat(index)
        for dc, dr in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            c, r = col + dc, row + dr
            if 0 <= c < self.cols and 0 <= r < self.rows:
                yield self.flat(c, r)


GRID = Grid()


class Environment:

    def __init__(self, x_a, x_o, so_cells, goal_cells, seed=None, rejections=0, grid=GRID):
        self.x_a = x_a
        self.x_o = np.asarray(x_o, dtype=float).reshape(2)
        self.so_cells = sorted(tuple(int(v) for v in cell) for cell in so_cells)
        self.goal_cells = sorted(tuple(int(v) for v in cell) for cell in goal_cells)
        self.seed = seed
        self.rejections = rejections
        self.grid = grid
        self.so_mask = np.zeros(grid.size, dtype=bool)
        for col, row in self.so_cells:
            self.so_mask[grid.flat(col, row)] = True
        self.goal_mask = np.zeros(grid.size, dtype=bool)
        for col, row in self.goal_cells:
            self.goal_mask[grid.flat(col, row)] = True
        self._goal_distances = None

    def goal_distances(self, unreachable=DEFAULT_PARAMS.unreachable):
        if self._goal_distances is None:
            self._goal_distances = goal_distance_table(self, unreachable)
        return self._goal_distances

    def to_dict(self):
        return {
            "x_a": self.x_a.to_list(),
            "x_o": self.x_o.tolist(),
            "so_cells": [list(cell) for cell in self.so_cells],
            "goal_cells": [list(cell) for cell in self.goal_cells],
            "seed": self.seed,
        }

    def __repr__(self):
        return f"Environment(seed={self.seed}, so={self.so_cells}, goals={self.goal_cells})"


def goal_distance_table(env, unreachable=DEFAULT_PARAMS.unreachable):
    """Shortest 4-connected path length from every cell to its closest goal,
    with Euclidean cell-centre edge weights; ``unreachable`` for obstacle cells
    and cells cut off from every goal."""
    grid = env.grid
    rows, cols, weights = [], [], []
    for index in range(grid.size):
        if env.so_mask[index]:
            continue
        for other in grid.neighbours(index):
            if other > index and not env.so_mask[other]:
                rows.append(index)
                cols.append(other)
                weights.append(float(np.linalg.norm(grid.center(index) - grid.center(other))))
    graph = coo_matrix((weights, (rows, cols)), shape=(grid.size, grid.size)).tocsr()
    goals = np.flatnonzero(env.goal_mask)
    distances = dijkstra(graph, directed=False, indices=goals).min(axis=0)
    distances[env.goal_mask] = 0.0
    distances[~np.isfinite(distances) | env.so_mask] = unreachable
    return distances


def shortest_goal_distance(waypoint, env, unreachable=DEFAULT_PARAMS.unreachable):
    cell = int(env.grid.cell_index(waypoint)[0])
    if cell < 0:
        return unreachable
    return float(env.goal_distances(unreachable)[cell])


def in_obstacle(points, env):
    cells = env.grid.cell_index(points)
    return np.where(cells >= 0, env.so_mask[np.maximum(cells, 0)], False)


def barrier_arrays(points, x_o, env, params=DEFAULT_PARAMS):
    points = np.atleast_2d(points)
    clearance = np.linalg.norm(points - x_o, axis=1) - params.safety_radius
    return np.where(in_obstacle(points, env), params.obstacle_barrier, clearance)


def barrier(x_a, x_o, env, params=DEFAULT_PARAMS):
    """Safety margin: the obstacle value inside a static-obstacle cell, else the
    planar clearance to the uncontrolled agent beyond the safety radius."""
    return float(barrier_arrays(x_a.position, np.asarray(x_o, dtype=float), env, params)[0])


def path_exists(grid, so_mask, goal_mask, start):
    if so_mask[start]:
        return False
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        if goal_mask[current]:
            return True
        for other in grid.neighbours(current):
            if other not in seen and not so_mask[other]:
                seen.add(other)
                queue.append(other)
    return False


def environment_violations(env):
    """Messages for every environment invariant ``env`` breaks."""
    grid = env.grid
    problems = []
    if len(set(env.so_cells)) != len(env.so_cells) or len(set(env.goal_cells)) != len(env.goal_cells):
        problems.append("cells must be distinct")
    if set(env.so_cells) & set(env.goal_cells):
        problems.append("static obstacles and goals overlap")
    blocked = env.so_mask | env.goal_mask
    agent_cell = int(grid.cell_index(env.x_a.position)[0])
    other_cell = int(grid.cell_index(env.x_o)[0])
    if agent_cell < 0 or blocked[agent_cell]:
        problems.append("controlled agent starts outside the free cells")
    if other_cell < 0 or blocked[other_cell]:
        problems.append("uncontrolled agent starts outside the free cells")
    if agent_cell >= 0 and not path_exists(grid, env.so_mask, env.goal_mask, agent_cell):
        problems.append("no obstacle-free path from the controlled agent to a goal")
    return problems


def _point_in_cell(rng, grid, index):
    col, row = grid.unflat(index)
    corner = grid.lower + np.array([col, row]) * grid.cell_size
    return corner + rng.random(2) * grid.cell_size


def sample_environment(seed, params=DEFAULT_PARAMS, grid=GRID):
    """Rejection-sample an environment satisfying every invariant.

    Agent positions are drawn uniformly over the free, non-goal area, so only
    path feasibility is ever rejected.
    """
    rng = rng_for(seed, "environment")
    n_obstacles, n_goals = params.n_obstacles, params.n_goals
    if n_obstacles + n_goals + 1 > grid.size:
        raise DomainError("grid too small for the requested obstacles and goals")
    for rejections in range(params.max_rejections):
        cells = rng.permutation(grid.size)
        so = cells[:n_obstacles]
        goals = cells[n_obstacles : n_obstacles + n_goals]
        free = np.sort(cells[n_obstacles + n_goals :])
        agent_cell, other_cell = rng.choice(free, size=2, replace=True)
        env = Environment(
            x_a=UnicycleState(*_point_in_cell(rng, grid, agent_cell), rng.random() * TWO_PI),
            x_o=_point_in_cell(rng, grid, other_cell),
            so_cells=[grid.unflat(i) for i in so],
            goal_cells=[grid.unflat(i) for i in goals],
            seed=int(seed),
            rejections=rejections,
            grid=grid,
        )
        if not environment_violations(env):
            if rejections:
                logger.debug("environment %d accepted after %d rejections", seed, rejections)
            return env
    raise SamplingError(f"environment sampling rejected {params.max_rejections} configurations for seed {seed}")


def read_environment(path, grid=GRID):
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return Environment(
        x_a=UnicycleState(*data["x_a"]),
        x_o=data["x_o"],
        so_cells=data["so_cells"],
        goal_cells=data["goal_cells"],
        seed=data.get("seed"),
        grid=grid,
    )


def write_environment(env, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(env.to_dict()) + "\n", encoding="utf-8")
    return path
