import csv
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from gapcert.certifiers.variance import variance_many
from gapcert.config import ENUMERATION_LIMIT
from gapcert.errors import DomainError
from gapcert.percentile.calculus import confidence_of, min_samples
from gapcert.percentile.seeding import derive_seed
from gapcert.percentile.solver import enumerate_costs

logger = logging.getLogger(__name__)

EXACT = "exact"


@dataclass(frozen=True)
class MonteCarlo:
    m: int
    seed: int

    def __post_init__(self):
        if self.m < 1:
            raise DomainError(f"monte-carlo mode needs m >= 1, got {self.m}")


@dataclass
class GapCertificate:
    v_star: float
    n_v: int
    epsilon: float
    confidence: float
    solution_cost: float
    chi: float
    seed: int
    d_indices: list
    warnings: list = field(default_factory=list)

    @property
    def interval(self):
        """Interval holding the optimal value with the certificate's confidence."""
        return (self.solution_cost - self.v_star, self.solution_cost)

    def covers(self, true_gap):
        return self.v_star >= true_gap

    def to_dict(self):
        return {
            "v_star": self.v_star,
            "n_v": self.n_v,
            "epsilon": self.epsilon,
            "confidence": self.confidence,
            "solution_cost": self.solution_cost,
            "chi": self.chi,
            "seed": self.seed,
            "d_indices": [int(i) for i in self.d_indices],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass(frozen=True)
class LevelSetReport:
    radius: float
    fraction: float
    mode: str
    samples: int


def certify_gap(model, n_v, epsilon, seed):
    """Second percentile pass: the largest variance over ``n_v`` fresh draws.

    With ``epsilon`` no larger than the probability of drawing a decision whose
    variance exceeds the solution's optimality gap, the returned ``v_star``
    bounds that gap with confidence ``1 - (1 - epsilon)**n_v``.
    """
    if int(n_v) != n_v or n_v < 1:
        raise DomainError(f"n_v must be a positive integer, got {n_v}")
    if not 0.0 < epsilon <= 1.0:
        raise DomainError(f"epsilon must lie in (0, 1], got {epsilon}")
    n_v = int(n_v)
    warnings = []
    recommended = min_samples(epsilon, 0.95)
    if n_v < recommended:
        message = f"n_v={n_v} is below the {recommended} samples needed for 0.95 confidence at epsilon={epsilon}"
        logger.warning(message)
        warnings.append(message)
    decisions = model.base.space.sample(n_v, derive_seed(seed, "certify"))
    variances = variance_many(model, model.base.evaluate(decisions))
    certificate = GapCertificate(
        v_star=float(variances.max()),
        n_v=n_v,
        epsilon=float(epsilon),
        confidence=confidence_of(epsilon, n_v),
        solution_cost=float(model.info.costs.min()),
        chi=model.chi,
        seed=int(seed),
        d_indices=model.d_indices.tolist(),
        warnings=warnings,
    )
    logger.debug("certified %s: v_star=%.6g at confidence %.4f", model.base.name, certificate.v_star, certificate.confidence)
    return certificate


def mode_costs(model, mode, limit=ENUMERATION_LIMIT):
    """Costs of the decisions a level-set query ranges over."""
    if mode == EXACT:
        return enumerate_costs(model.base, limit=limit)
    if isinstance(mode, MonteCarlo):
        return model.base.evaluate(model.base.space.sample(mode.m, derive_seed(mode.seed, "level-set")))
    raise DomainError(f"unknown level-set mode {mode!r}")


def exceedance_probability(model, threshold, mode, limit=ENUMERATION_LIMIT):
    """Probability that a uniform decision has variance strictly above ``threshold``."""
    if threshold < 0:
        raise DomainError(f"threshold must be nonnegative, got {threshold}")
    variances = variance_many(model, mode_costs(model, mode, limit=limit))
    return float(np.count_nonzero(variances > threshold)) / variances.size


def _fraction_within(variances, r):
    return float(np.count_nonzero(variances <= r)) / variances.size


def _mode_name(mode):
    return EXACT if mode == EXACT else "monte-carlo"


def level_set_report(model, r, mode, limit=ENUMERATION_LIMIT):
    """Fraction of decisions whose variance is at most ``r``."""
    return level_set_sweep(model, [r], mode, limit=limit)[0]


def level_set_sweep(model, radii, mode, limit=ENUMERATION_LIMIT):
    """Level-set reports for every radius, all on one shared sample set."""
    variances = variance_many(model, mode_costs(model, mode, limit=limit))
    samples = variances.size
    reports = []
    for r in radii:
        if r < 0:
            raise DomainError(f"level-set radius must be nonnegative, got {r}")
        inside = _fraction_within(variances, r)
        reports.append(LevelSetReport(radius=float(r), fraction=inside, mode=_mode_name(mode), samples=samples))
    return reports


def write_level_sets(reports, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["r", "fraction"])
        for report in reports:
            writer.writerow([repr(report.radius), repr(report.fraction)])
    return path


def gap_probability(model, optimum, mode, limit=ENUMERATION_LIMIT):
    """Probability ``p`` of drawing a decision whose variance exceeds the
    solution's optimality gap measured against ``optimum``."""
    gap = max(float(model.info.costs.min()) - optimum, 0.0)
    return exceedance_probability(model, gap, mode, limit=limit)


def exact_gap_probability(model, optimum, limit=ENUMERATION_LIMIT):
    return gap_probability(model, optimum, EXACT, limit=limit)


def estimate_gap_probability(model, optimum, m, seed):
    return gap_probability(model, optimum, MonteCarlo(m, seed))
