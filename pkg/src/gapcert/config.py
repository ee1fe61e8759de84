import json
import math
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from gapcert.errors import ConfigError

# 10! -- the largest space enumerated exactly (10-waypoint TSP)
ENUMERATION_LIMIT = 3_628_800

DEFAULT_EPSILON = 0.01
DEFAULT_CHI = 0.1

EXHAUSTIVE_TOLERANCE = 1e-9
REFINE_TOLERANCE = 1e-6


class EnumerationConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    limit: int = Field(ENUMERATION_LIMIT, ge=1)
    chunk: int = Field(65_536, ge=1)


class DescentConfig(BaseModel):
    """Local descent used by the refine-min oracle.

    Step lengths are fractions of the box width along each dimension.
    """

    model_config = ConfigDict(frozen=True)

    fd_step: float = Field(1e-6, gt=0)
    initial_step: float = Field(0.1, gt=0)
    shrink: float = Field(0.5, gt=0, lt=1)
    min_step: float = Field(1e-9, gt=0)
    max_iter: int = Field(500, ge=1)
    starts: int = Field(1, ge=1)
    compass: bool = True


class OracleConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    method: Literal["exhaustive", "refine-min", "two-opt", "known"] = "refine-min"
    n0: int = Field(2000, ge=1)
    descent: DescentConfig = DescentConfig()
    enumeration: EnumerationConfig = EnumerationConfig()
    tolerance: float | None = Field(None, ge=0)

    def gap_tolerance(self):
        if self.tolerance is not None:
            return self.tolerance
        if self.method in ("exhaustive", "known"):
            return EXHAUSTIVE_TOLERANCE
        return REFINE_TOLERANCE


# refine-min for the multimodal benchmark landscapes, run once per benchmark
BENCHMARK_ORACLE = OracleConfig(n0=20_000, descent=DescentConfig(max_iter=5000, starts=64))


class WaypointProblemParams(BaseModel):
    """Constants of the single-tick waypoint NMPC problem."""

    model_config = ConfigDict(frozen=True)

    horizon: int = Field(5, ge=1)
    dt: float = Field(0.033, gt=0)
    penalty: float = 100.0
    annulus_min: float = Field(0.05, ge=0)
    annulus_max: float = Field(0.2, gt=0)
    safety_radius: float = Field(0.18, ge=0)
    obstacle_barrier: float = -5.0
    k_v: float = 2.0
    k_omega: float = 4.0
    v_max: float = Field(0.2, gt=0)
    omega_max: float = Field(math.pi, gt=0)
    n_obstacles: int = Field(8, ge=0)
    n_goals: int = Field(3, ge=1)
    unreachable: float = 1e6
    max_rejections: int = Field(10_000, ge=1)

    @model_validator(mode="after")
    def _annulus_ordered(self):
        if self.annulus_min >= self.annulus_max:
            raise ValueError("annulus_min must be below annulus_max")
        return self


BENCHMARK_NAMES = ("ackley", "beale", "himmelblau", "levi13", "rastrigrin10", "rastrigrin2")
FAMILY_NAMES = ("constant", "mpc", "tsp", "uniform-gap")
EXPERIMENTS = ("solve", "certify", "chi-sweep", "table1", "tsp-fig2", "mpc-fig4", "validate")


class ExperimentConfig(BaseModel):
    """One CLI run. ``seed`` is mandatory; every random draw derives from it."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    experiment: Literal["solve", "certify", "chi-sweep", "table1", "tsp-fig2", "mpc-fig4", "validate"]
    seed: int = Field(ge=0)
    out: str = "runs"
    problem: str | None = None
    tsp_waypoints: int = Field(8, ge=2)
    tsp_instance: str | None = None
    constant_value: float = 1.0
    n_p: int = Field(1000, ge=1)
    n_v: int | None = Field(None, ge=1)
    r: int | None = Field(None, ge=1)
    m: int = Field(2000, ge=1)
    p_samples: int = Field(10_000, ge=1)
    epsilon: float | None = Field(None, gt=0, le=1)
    confidence: float = Field(0.99, gt=0, lt=1)
    confidences: list[float] = [0.7, 0.999]
    chi: float = Field(DEFAULT_CHI, gt=0, le=1)
    chis: list[float] = [0.01, 0.05, 0.1, 0.5, 1.0]
    levels: int = Field(50, ge=2)
    trials: int = Field(200, ge=1)
    n_p_list: list[int] = [200, 300, 500]
    benchmarks: list[str] = list(BENCHMARK_NAMES)
    histogram_bins: int = Field(30, ge=1)
    oracle: OracleConfig | None = None
    mpc: WaypointProblemParams = WaypointProblemParams()
    workers: int = Field(1, ge=1)

    @model_validator(mode="after")
    def _fields_for_experiment(self):
        selectable = (*BENCHMARK_NAMES, *FAMILY_NAMES)
        if self.problem is not None and self.problem not in selectable:
            raise ValueError(f"problem must be one of {sorted(selectable)}, got {self.problem!r}")
        if self.experiment in ("solve", "certify", "chi-sweep") and self.problem is None:
            raise ValueError(f"experiment {self.experiment!r} needs a problem")
        if self.experiment == "validate" and self.problem not in FAMILY_NAMES:
            raise ValueError(f"experiment 'validate' needs a problem family from {list(FAMILY_NAMES)}")
        unknown = sorted(set(self.benchmarks) - set(BENCHMARK_NAMES))
        if unknown:
            raise ValueError(f"unknown benchmarks {unknown}")
        if any(not 0.0 < c < 1.0 for c in self.confidences):
            raise ValueError("confidences must lie in (0, 1)")
        if any(not 0.0 < chi <= 1.0 for chi in self.chis):
            raise ValueError("chis must lie in (0, 1]")
        if any(n < 1 for n in self.n_p_list):
            raise ValueError("n_p_list entries must be positive")
        return self

    def resolved_epsilon(self):
        """Configured epsilon; tsp-fig2 leaves None to certify at the exact p."""
        if self.epsilon is not None or self.experiment == "tsp-fig2":
            return self.epsilon
        return DEFAULT_EPSILON

    def resolved_oracle(self):
        """The configured oracle, else the exact one the problem admits, else a
        refine-min sized for the problem."""
        if self.oracle is not None:
            return self.oracle
        if self.experiment == "tsp-fig2" or self.problem == "tsp":
            return OracleConfig(method="exhaustive")
        if self.problem in ("constant", "uniform-gap"):
            return OracleConfig(method="known")
        if self.experiment == "table1" or self.problem in BENCHMARK_NAMES:
            return BENCHMARK_ORACLE
        return OracleConfig()


def load_experiment_config(path=None, **overrides):
    """Validate a JSON config file merged with non-None ``overrides``.

    Raises ``ConfigError`` carrying one message per offending field.
    """
    data = {}
    if path is not None:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"config {path} must hold a JSON object")
    data.update({key: value for key, value in overrides.items() if value is not None})
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        fields = {".".join(str(part) for part in error["loc"]) or "config": error["msg"] for error in exc.errors()}
        summary = "; ".join(f"{name}: {message}" for name, message in fields.items())
        raise ConfigError(f"invalid experiment config: {summary}", fields=fields) from exc
