from gapcert.mpc.environment import (
    GRID,
    Environment,
    Grid,
    barrier,
    environment_violations,
    goal_distance_table,
    read_environment,
    sample_environment,
    shortest_goal_distance,
    write_environment,
)
from gapcert.mpc.unicycle import ControlInput, UnicycleState, dynamics_step, lyapunov_controller
from gapcert.mpc.waypoint import (
    WaypointCost,
    augmented_cost,
    make_waypoint_problem,
    mpc_family,
    rollout_feasible,
    rollout_trace,
    waypoint_sampler,
    waypoint_space,
    write_rollout_trace,
)
