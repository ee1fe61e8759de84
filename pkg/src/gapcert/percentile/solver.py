import logging

import numpy as np

from gapcert.config import ENUMERATION_LIMIT
from gapcert.errors import CapacityError, DomainError
from gapcert.percentile.problem import InfoSet, PercentileSolution
from gapcert.percentile.seeding import derive_seed

logger = logging.getLogger(__name__)


def _check_count(name, value):
    if int(value) != value or value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value}")
    return int(value)


def percentile_solve(problem, n_p, seed):
    """Best of ``n_p`` independent uniform draws, with the full information set.

    Ties go to the lowest sample index.
    """
    n_p = _check_count("n_p", n_p)
    decisions = problem.space.sample(n_p, seed)
    costs = problem.evaluate(decisions)
    info = InfoSet(decisions=decisions, costs=costs, seed=int(seed), problem_name=problem.name, problem=problem)
    # np.argmin returns the first minimiser
    best = info.point(int(np.argmin(costs)))
    logger.debug("%s: best of %d samples is %.6g at index %d", problem.name, n_p, best.cost, best.index)
    return PercentileSolution(best=best, info=info)


def enumerate_costs(problem, limit=ENUMERATION_LIMIT, chunk=65_536):
    """Costs of every decision of a finite space, in enumeration order."""
    space = problem.space
    if not space.finite:
        raise DomainError(f"{problem.name}: exact enumeration needs a finite decision space")
    if space.cardinality() > limit:
        raise CapacityError(space.cardinality(), limit)
    parts = []
    offset = 0
    for block in space.enumerate(chunk=chunk):
        parts.append(problem.evaluate(block, offset=offset))
        offset += block.shape[0]
    return np.concatenate(parts)


def solve_by_enumeration(problem, limit=ENUMERATION_LIMIT):
    """Percentile solution whose information set is the whole finite space."""
    decisions = np.concatenate(list(problem.space.enumerate(limit=limit)))
    costs = problem.evaluate(decisions)
    info = InfoSet(decisions=decisions, costs=costs, seed=0, problem_name=problem.name, problem=problem)
    return PercentileSolution(best=info.point(int(np.argmin(costs))), info=info)


def estimate_better_fraction(problem, candidate, m, seed, exact=False, limit=ENUMERATION_LIMIT):
    """Fraction of the space strictly better than ``candidate``.

    Monte Carlo over ``m`` fresh draws, or exact enumeration when ``exact`` is
    set (finite spaces only).
    """
    m = _check_count("m", m)
    reference = problem.evaluate_one(candidate)
    if exact:
        costs = enumerate_costs(problem, limit=limit)
    else:
        costs = problem.evaluate(problem.space.sample(m, derive_seed(seed, "better-fraction")))
    return float(np.count_nonzero(costs < reference)) / costs.size
