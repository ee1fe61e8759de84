import json

import pytest

from gapcert.config import (
    BENCHMARK_ORACLE,
    DEFAULT_EPSILON,
    ExperimentConfig,
    OracleConfig,
    WaypointProblemParams,
    load_experiment_config,
)
from gapcert.errors import ConfigError

oracle_cases = [
    ({"experiment": "tsp-fig2"}, "exhaustive"),
    ({"experiment": "certify", "problem": "tsp"}, "exhaustive"),
    ({"experiment": "validate", "problem": "uniform-gap"}, "known"),
    ({"experiment": "validate", "problem": "constant"}, "known"),
    ({"experiment": "certify", "problem": "ackley"}, "refine-min"),
    ({"experiment": "mpc-fig4"}, "refine-min"),
    ({"experiment": "certify", "problem": "tsp", "oracle": {"method": "two-opt"}}, "two-opt"),
]


@pytest.mark.parametrize("fields, method", oracle_cases)
def test_resolved_oracle(fields, method):
    assert ExperimentConfig(seed=0, **fields).resolved_oracle().method == method


benchmark_oracle_cases = [
    ({"experiment": "table1"}, BENCHMARK_ORACLE),
    ({"experiment": "certify", "problem": "levi13"}, BENCHMARK_ORACLE),
    ({"experiment": "chi-sweep", "problem": "rastrigrin10"}, BENCHMARK_ORACLE),
    ({"experiment": "mpc-fig4"}, OracleConfig()),
    ({"experiment": "table1", "oracle": {"n0": 50}}, OracleConfig(n0=50)),
]


@pytest.mark.parametrize("fields, expected", benchmark_oracle_cases)
def test_benchmark_pipelines_get_the_multi_start_oracle(fields, expected):
    assert ExperimentConfig(seed=0, **fields).resolved_oracle() == expected


def test_resolved_epsilon():
    assert ExperimentConfig(experiment="table1", seed=0).resolved_epsilon() == DEFAULT_EPSILON
    assert ExperimentConfig(experiment="table1", seed=0, epsilon=0.05).resolved_epsilon() == 0.05
    assert ExperimentConfig(experiment="tsp-fig2", seed=0).resolved_epsilon() is None


invalid_configs = [
    ({"experiment": "solve", "seed": 1}, "needs a problem"),
    ({"experiment": "validate", "seed": 1, "problem": "beale"}, "problem family"),
    ({"experiment": "solve", "seed": 1, "problem": "rosenbrock"}, "problem must be one of"),
    ({"experiment": "table1", "seed": 1, "benchmarks": ["sphere"]}, "unknown benchmarks"),
    ({"experiment": "table1", "seed": 1, "confidences": [1.0]}, "confidences"),
    ({"experiment": "chi-sweep", "seed": 1, "problem": "tsp", "chis": [0.0]}, "chis"),
]


@pytest.mark.parametrize("data, message", invalid_configs)
def test_invalid_configs(data, message):
    with pytest.raises(ConfigError) as error:
        load_experiment_config(**data)
    assert message in str(error.value)


field_errors = [
    ({"experiment": "table1"}, "seed"),
    ({"experiment": "table1", "seed": -1}, "seed"),
    ({"experiment": "table1", "seed": 1, "n_p": 0}, "n_p"),
    ({"experiment": "table1", "seed": 1, "colour": "red"}, "colour"),
    ({"experiment": "table1", "seed": 1, "oracle": {"method": "guess"}}, "oracle.method"),
    ({"experiment": "table1", "seed": 1, "mpc": {"annulus_min": 0.3}}, "mpc"),
]


@pytest.mark.parametrize("data, field", field_errors)
def test_errors_name_the_field(data, field):
    with pytest.raises(ConfigError) as error:
        load_experiment_config(**data)
    assert field in error.value.fields


def test_file_merged_with_overrides(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"experiment": "certify", "problem": "beale", "seed": 3, "n_p": 50}), encoding="utf-8")
    config = load_experiment_config(path, seed=9, out=None)
    assert config.seed == 9
    assert config.n_p == 50
    assert config.out == "runs"


def test_unreadable_files(tmp_path):
    with pytest.raises(ConfigError):
        load_experiment_config(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_experiment_config(broken)
    listed = tmp_path / "list.json"
    listed.write_text("[]", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_experiment_config(listed)


def test_defaults():
    params = WaypointProblemParams()
    assert (params.horizon, params.dt, params.penalty) == (5, 0.033, 100.0)
    assert OracleConfig().gap_tolerance() == 1e-6
    assert OracleConfig(method="exhaustive").gap_tolerance() == 1e-9
