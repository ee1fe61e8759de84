from gapcert.config import OracleConfig
from gapcert.errors import DomainError
from gapcert.oracles.exhaustive import exhaustive_min, known_min
from gapcert.oracles.refine import refine_min, two_opt_min
from gapcert.oracles.result import OracleResult


def run_oracle(problem, cfg=None, seed=0, incumbent=None):
    """Ground-truth optimum of ``problem`` by the method ``cfg`` names."""
    cfg = cfg or OracleConfig()
    if cfg.method == "exhaustive":
        return exhaustive_min(problem, limit=cfg.enumeration.limit, chunk=cfg.enumeration.chunk)
    if cfg.method == "known":
        return known_min(problem)
    if cfg.method == "refine-min":
        return refine_min(problem, n0=cfg.n0, seed=seed, descent_cfg=cfg.descent, incumbent=incumbent)
    if cfg.method == "two-opt":
        return two_opt_min(problem, n0=cfg.n0, seed=seed, incumbent=incumbent)
    raise DomainError(f"unknown oracle method {cfg.method!r}")
