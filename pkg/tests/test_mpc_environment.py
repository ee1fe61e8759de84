import numpy as np
import pytest

from gapcert.config import WaypointProblemParams
from gapcert.errors import DomainError
from gapcert.mpc import (
    GRID,
    Environment,
    UnicycleState,
    barrier,
    environment_violations,
    goal_distance_table,
    read_environment,
    sample_environment,
    shortest_goal_distance,
    write_environment,
)

FAR = [-1.4, 1.0]


def make_env(x_a=(0.3, 0.0, 0.0), so_cells=(), goal_cells=((4, 2),), x_o=FAR):
    return Environment(UnicycleState(*x_a), x_o, so_cells, goal_cells, seed=0)


cell_cases = [
    ((-1.6, -1.2), (0, 0)),
    ((-1.4, -1.0), (0, 0)),
    ((-0.01, 0.0), (3, 2)),
    ((0.0, 0.0), (3, 2)),
    ((0.0001, 0.0), (4, 2)),
    ((1.6, 1.2), (7, 4)),
]


@pytest.mark.parametrize("point, cell", cell_cases)
def test_cell_index(point, cell):
    assert GRID.unflat(GRID.cell_index(point)[0]) == cell


column_boundaries = [(-1.2, 0), (-0.8, 1), (-0.4, 2), (0.0, 3), (0.4, 4), (0.8, 5), (1.2, 6)]
row_boundaries = [(-0.72, 0), (-0.24, 1), (0.24, 2), (0.72, 3)]


@pytest.mark.parametrize("x, col", column_boundaries)
def test_column_boundary_goes_to_lower_cell(x, col):
    assert GRID.unflat(GRID.cell_index([x, 0.1])[0]) == (col, 2)


@pytest.mark.parametrize("y, row", row_boundaries)
def test_row_boundary_goes_to_lower_cell(y, row):
    assert GRID.unflat(GRID.cell_index([-1.4, y])[0]) == (0, row)


def test_points_outside_have_no_cell():
    assert GRID.cell_index([[2.0, 0.0], [0.0, -1.3]]).tolist() == [-1, -1]


distance_cases = [
    ((0.6, 0.0), 0.4),
    ((0.2, 0.0), 0.0),
    ((0.2, 0.4), 0.48),
    ((0.6, 0.4), 0.88),
    ((5.0, 0.0), 1e6),
]


@pytest.mark.parametrize("waypoint, expected", distance_cases)
def test_shortest_goal_distance(waypoint, expected):
    assert shortest_goal_distance(waypoint, make_env()) == pytest.approx(expected)


def test_walled_off_cells_are_unreachable():
    # obstacles close off the corner cell (0, 0)
    env = make_env(so_cells=[(1, 0), (0, 1)])
    table = goal_distance_table(env)
    assert table[GRID.flat(0, 0)] == 1e6
    assert table[GRID.flat(1, 0)] == 1e6
    assert table[GRID.flat(2, 0)] < 1e6


def test_goal_distances_grow_away_from_goals():
    env = make_env(goal_cells=[(0, 0), (7, 4)])
    table = env.goal_distances()
    assert table[GRID.flat(0, 0)] == table[GRID.flat(7, 4)] == 0.0
    assert table[GRID.flat(1, 0)] == pytest.approx(0.4)
    assert table[GRID.flat(3, 2)] == pytest.approx(min(3 * 0.4, 4 * 0.4) + 2 * 0.48)


def test_barrier_inside_obstacle_cell():
    env = make_env(x_a=(-1.4, -1.0, 0.0), so_cells=[(0, 0)])
    assert barrier(env.x_a, env.x_o, env) == -5.0


def test_barrier_is_clearance_to_other_agent():
    env = make_env(x_a=(0.0, 0.0, 0.0), x_o=[1.0, 0.0])
    assert barrier(env.x_a, env.x_o, env) == pytest.approx(0.82)
    assert barrier(UnicycleState(0.9, 0.0, 0.0), env.x_o, env) < 0.0


def test_violations_of_a_hand_built_environment():
    env = make_env(x_a=(-1.4, -1.0, 0.0), so_cells=[(0, 0), (4, 2)], goal_cells=[(4, 2)])
    messages = environment_violations(env)
    assert "static obstacles and goals overlap" in messages
    assert "controlled agent starts outside the free cells" in messages


def test_trapped_agent_has_no_path():
    env = make_env(x_a=(-1.4, -1.0, 0.0), so_cells=[(1, 0), (0, 1)])
    assert environment_violations(env) == ["no obstacle-free path from the controlled agent to a goal"]


@pytest.mark.parametrize("seed", range(10))
def test_sampled_environments_are_valid(seed):
    env = sample_environment(seed)
    assert environment_violations(env) == []
    assert len(env.so_cells) == 8
    assert len(env.goal_cells) == 3
    assert env.x_a.in_bounds()
    assert 0.0 <= env.x_a.theta < 2 * np.pi


def test_sampling_is_deterministic():
    assert sample_environment(4).to_dict() == sample_environment(4).to_dict()
    assert sample_environment(4).to_dict() != sample_environment(5).to_dict()


def test_open_grid_never_rejects():
    params = WaypointProblemParams(n_obstacles=0)
    assert all(sample_environment(seed, params).rejections == 0 for seed in range(20))


def test_grid_too_small():
    with pytest.raises(DomainError):
        sample_environment(0, WaypointProblemParams(n_obstacles=37, n_goals=3))


def test_environment_file(tmp_path):
    env = sample_environment(7)
    restored = read_environment(write_environment(env, tmp_path / "env.json"))
    assert restored.to_dict() == env.to_dict()
