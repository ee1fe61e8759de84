"""Problems and families named by an experiment config."""

from gapcert.config import BENCHMARK_NAMES
from gapcert.errors import ConfigError
from gapcert.mpc import mpc_family
from gapcert.percentile.seeding import derive_seed
from gapcert.problems import (
    constant_family,
    constant_problem,
    make_benchmark,
    make_tsp_family,
    make_tsp_problem,
    random_tsp_instance,
    read_tsp_instance,
    uniform_gap_family,
)


def tsp_instance(config):
    if config.tsp_instance is not None:
        return read_tsp_instance(config.tsp_instance)
    return random_tsp_instance(config.tsp_waypoints, seed=derive_seed(config.seed, "tsp-instance"))


def build_problem(config):
    name = config.problem
    if name in BENCHMARK_NAMES:
        return make_benchmark(name)
    if name == "tsp":
        return make_tsp_problem(tsp_instance(config))
    if name == "constant":
        return constant_problem(config.constant_value)
    if name in ("uniform-gap", "mpc"):
        return build_family(config).instance(derive_seed(config.seed, "instance"))
    raise ConfigError(f"no problem named {name!r}", fields={"problem": "unknown problem"})


def build_family(config):
    name = config.problem
    if name == "mpc" or config.experiment == "mpc-fig4":
        return mpc_family(config.mpc)
    if name == "tsp":
        return make_tsp_family(config.tsp_waypoints, seed=config.seed)
    if name == "uniform-gap":
        return uniform_gap_family()
    if name == "constant":
        return constant_family(config.constant_value)
    raise ConfigError(f"{name!r} is not a problem family", fields={"problem": "not a problem family"})
