import logging

import numpy as np

from gapcert.config import ENUMERATION_LIMIT
from gapcert.errors import CapacityError, DomainError, OracleError
from gapcert.oracles.result import OracleResult

logger = logging.getLogger(__name__)


def exhaustive_min(problem, limit=ENUMERATION_LIMIT, chunk=65_536):
    """Exact minimum of a finite problem; first minimiser in enumeration order."""
    space = problem.space
    if not space.finite:
        raise DomainError(f"{problem.name}: exhaustive oracle needs a finite decision space")
    if space.cardinality() > limit:
        raise CapacityError(space.cardinality(), limit)
    best_value = np.inf
    best = None
    offset = 0
    for block in space.enumerate(chunk=chunk):
        costs = problem.evaluate(block, offset=offset)
        index = int(np.argmin(costs))
        # strict comparison keeps the earliest minimiser across chunks
        if costs[index] < best_value:
            best_value = float(costs[index])
            best = block[index].copy()
        offset += block.shape[0]
    logger.debug("%s: exhaustive minimum %.9g over %d decisions", problem.name, best_value, offset)
    return OracleResult(value=best_value, minimizer=best, method="exhaustive", evaluations=offset)


def known_min(problem):
    """Declared optimum of an analytically solved problem."""
    if problem.optimum is None:
        raise OracleError(f"{problem.name} declares no known optimum")
    minimizer = getattr(problem, "minimizer", None)
    return OracleResult(value=float(problem.optimum), minimizer=minimizer, method="known", evaluations=0)
