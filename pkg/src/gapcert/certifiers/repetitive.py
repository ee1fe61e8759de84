import csv
import json
import logging
import math
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path

from gapcert.config import OracleConfig
from gapcert.errors import DomainError, GapCertError, OracleError
from gapcert.oracles import run_oracle
from gapcert.percentile.calculus import confidence_of
from gapcert.percentile.seeding import derive_seed
from gapcert.percentile.solver import percentile_solve

logger = logging.getLogger(__name__)

GAP_SAMPLE_HEADER = ["trial", "instance_seed", "solution_cost", "oracle_value", "gamma"]


class ProblemFamily:
    """An index set of problems that can be sampled uniformly.

    ``sampler`` maps an instance seed to a ``Problem`` deterministically and
    must be picklable when gap samples run in worker processes.
    """

    def __init__(self, sampler, description):
        self.sampler = sampler
        self.description = description

    def instance(self, seed):
        return self.sampler(int(seed))

    def __repr__(self):
        return f"ProblemFamily({self.description})"


@dataclass(frozen=True)
class GapSample:
    gamma: float
    instance_seed: int
    solution_cost: float
    oracle_value: float
    oracle_method: str


@dataclass
class RepetitiveCertificate:
    gamma_star: float
    r: int
    epsilon: float
    confidence: float
    n_p: int
    family: str = ""
    seed: int = 0
    samples: list = field(default_factory=list, repr=False)

    def to_dict(self):
        return {
            "gamma_star": self.gamma_star,
            "r": self.r,
            "epsilon": self.epsilon,
            "confidence": self.confidence,
            "n_p": self.n_p,
            "family": self.family,
            "seed": self.seed,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


def sample_gap(family, n_p, oracle_cfg=None, seed=0):
    """One draw of the gap random variable: sample an instance, solve it by
    percentile sampling and measure the gap against the oracle's optimum."""
    cfg = oracle_cfg or OracleConfig()
    instance_seed = derive_seed(seed, "instance")
    problem = family.instance(instance_seed)
    solution = percentile_solve(problem, n_p, derive_seed(seed, "solve"))
    try:
        oracle = run_oracle(problem, cfg, seed=derive_seed(seed, "oracle"), incumbent=solution.best)
    except OracleError as exc:
        exc.instance_seed = instance_seed
        raise
    except GapCertError as exc:
        raise OracleError(f"oracle failed on instance {instance_seed}: {exc}", instance_seed=instance_seed) from exc
    raw = solution.cost - oracle.value
    tolerance = cfg.gap_tolerance()
    if raw < -tolerance:
        raise OracleError(
            f"oracle value {oracle.value:.12g} exceeds the solution cost {solution.cost:.12g} "
            f"on instance {instance_seed}",
            instance_seed=instance_seed,
            best=oracle,
        )
    return GapSample(
        gamma=max(raw, 0.0),
        instance_seed=instance_seed,
        solution_cost=solution.cost,
        oracle_value=oracle.value,
        oracle_method=oracle.method,
    )


def draw_gap_samples(family, count, n_p, oracle_cfg, seed, stream):
    """``count`` independent gap samples on the seed stream named ``stream``."""
    seeds = [derive_seed(seed, stream, i) for i in range(count)]
    draw = partial(sample_gap, family, n_p, oracle_cfg)
    samples = []
    try:
        for sample in map(draw, seeds):
            samples.append(sample)
    except GapCertError:
        logger.error("%s: gap sampling aborted after %d of %d samples", family.description, len(samples), count)
        raise
    return samples


def build_certificate(family, r, n_p, epsilon, oracle_cfg=None, seed=0):
    """Largest of ``r`` gap samples; bounds future gaps with probability
    ``1 - epsilon`` at confidence ``1 - (1 - epsilon)**r``."""
    if int(r) != r or r < 1:
        raise DomainError(f"r must be a positive integer, got {r}")
    samples = draw_gap_samples(family, int(r), n_p, oracle_cfg, seed, "gap")
    certificate = RepetitiveCertificate(
        gamma_star=max(sample.gamma for sample in samples),
        r=int(r),
        epsilon=float(epsilon),
        confidence=confidence_of(epsilon, int(r)),
        n_p=int(n_p),
        family=family.description,
        seed=int(seed),
        samples=samples,
    )
    logger.info("%s: gamma_star=%.6g from r=%d at n_p=%d", family.description, certificate.gamma_star, r, n_p)
    return certificate


def coverage_of(samples, gamma_star):
    if not samples:
        return 1.0
    return sum(1 for sample in samples if sample.gamma <= gamma_star) / len(samples)


def validation_samples(family, m, n_p, oracle_cfg=None, seed=0):
    if int(m) != m or m < 1:
        raise DomainError(f"m must be a positive integer, got {m}")
    return draw_gap_samples(family, int(m), n_p, oracle_cfg, seed, "validate")


def validate_coverage(family, certificate, m, n_p, oracle_cfg=None, seed=0):
    """Fraction of ``m`` fresh instances whose gap stays within the certificate."""
    samples = validation_samples(family, m, n_p, oracle_cfg, seed)
    return coverage_of(samples, certificate.gamma_star)


def coverage_threshold(epsilon, m):
    """Acceptance floor: target coverage minus three binomial standard deviations."""
    return 1.0 - epsilon - 3.0 * math.sqrt(epsilon * (1.0 - epsilon) / m)


def write_gap_samples(samples, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(GAP_SAMPLE_HEADER)
        for trial, sample in enumerate(samples):
            writer.writerow([trial, sample.instance_seed, repr(sample.solution_cost), repr(sample.oracle_value), repr(sample.gamma)])
    return path
