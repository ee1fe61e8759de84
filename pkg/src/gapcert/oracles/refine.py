import logging

import numpy as np

from gapcert.config import DescentConfig
from gapcert.errors import DomainError, OracleError
from gapcert.oracles.result import OracleResult
from gapcert.percentile.seeding import derive_seed

logger = logging.getLogger(__name__)


class _Counter:

    def __init__(self, problem):
        self.problem = problem
        self.evaluations = 0

    def __call__(self, decisions):
        self.evaluations += decisions.shape[0]
        return self.problem.evaluate(decisions)


def _best_candidate(space, evaluate, candidates):
    candidates = np.asarray(candidates)
    valid = space.contains(candidates)
    values = np.full(candidates.shape[0], np.inf)
    if valid.any():
        values[valid] = evaluate(candidates[valid])
    best = int(np.argmin(values))
    return best, candidates[best], float(values[best])


def _scales(cfg):
    scales = []
    scale = cfg.initial_step
    while scale >= cfg.min_step:
        scales.append(scale)
        scale *= cfg.shrink
    return np.asarray(scales)


def _descend(space, evaluate, x, fx, cfg):
    """Projected descent from ``x``; returns the final point, value and whether
    the step shrank below ``min_step`` before the iteration limit.

    Once the step collapses, compass moves at every scale from the initial
    step down are polled in one batch; an improvement resumes descent at that
    scale.
    """
    widths = space.widths
    h = cfg.fd_step * widths
    dim = x.size
    step = cfg.initial_step
    scales = _scales(cfg)
    for _ in range(cfg.max_iter):
        if step < cfg.min_step:
            if not cfg.compass or scales.size == 0:
                return x, fx, True
            moves = (scales[:, None, None] * np.diag(widths)[None, :, :]).reshape(-1, dim)
            best, candidate, value = _best_candidate(space, evaluate, space.project(np.vstack([x + moves, x - moves])))
            if value >= fx:
                return x, fx, True
            x, fx = candidate, value
            step = float(scales[(best % moves.shape[0]) // dim])
            continue
        # central finite differences, measured on the projected points
        ahead = space.project(x + np.diag(h))
        behind = space.project(x - np.diag(h))
        f_ahead_behind = evaluate(np.vstack([ahead, behind]))
        spread = np.diagonal(ahead - behind)
        safe = np.where(spread > 0, spread, 1.0)
        grad = np.where(spread > 0, (f_ahead_behind[:dim] - f_ahead_behind[dim:]) / safe, 0.0)

        candidates = []
        scaled = grad * widths
        norm = np.linalg.norm(scaled)
        if norm > 0:
            candidates.append(space.project(x - step * widths * scaled / norm))
        if cfg.compass:
            moves = np.diag(step * widths)
            candidates.extend(space.project(x + moves))
            candidates.extend(space.project(x - moves))
        if not candidates:
            step *= cfg.shrink
            continue
        _, candidate, value = _best_candidate(space, evaluate, candidates)
        if value < fx:
            x, fx = candidate, value
            step = min(step / cfg.shrink, cfg.initial_step)
        else:
            step *= cfg.shrink
    return x, fx, step < cfg.min_step


def refine_min(problem, n0=2000, seed=0, descent_cfg=None, incumbent=None, strict=False):
    """Best of ``n0`` uniform draws followed by local descent.

    ``incumbent`` (a sampled point) joins the candidate pool, so the oracle
    never reports a value above a decision it has been shown. The descent only
    accepts strict improvements.
    """
    cfg = descent_cfg or DescentConfig()
    space = problem.space
    if space.finite or not hasattr(space, "widths"):
        raise DomainError(f"{problem.name}: refine-min needs a continuous box-like space")
    evaluate = _Counter(problem)
    decisions = space.sample(n0, derive_seed(seed, "refine-min"))
    costs = evaluate(decisions)
    if incumbent is not None:
        decisions = np.vstack([decisions, np.asarray(incumbent.decision, dtype=float)[None, :]])
        costs = np.append(costs, incumbent.cost)
    order = np.argsort(costs, kind="stable")[: cfg.starts]

    best_x, best_f, converged = decisions[order[0]], float(costs[order[0]]), True
    for index in order:
        x, fx, done = _descend(space, evaluate, decisions[index], float(costs[index]), cfg)
        if fx < best_f:
            best_x, best_f, converged = x, fx, done
        elif index == order[0]:
            converged = done
    if not converged:
        message = f"{problem.name}: descent hit {cfg.max_iter} iterations, best so far {best_f:.9g}"
        result = OracleResult(best_f, best_x, "refine-min", evaluate.evaluations, converged=False)
        if strict:
            raise OracleError(message, best=result)
        logger.warning(message)
        return result
    return OracleResult(best_f, best_x, "refine-min", evaluate.evaluations)


def _two_opt_neighbours(order):
    n = order.size
    neighbours = []
    for i in range(1, n - 1):
        for j in range(i + 1, n):
            candidate = order.copy()
            candidate[i : j + 1] = candidate[i : j + 1][::-1]
            neighbours.append(candidate)
    return np.asarray(neighbours)


def two_opt_min(problem, n0=2000, seed=0, max_iter=10_000, incumbent=None):
    """Heuristic: best of ``n0`` sampled permutations improved by 2-opt moves.

    Not an exact oracle; only used where no exactness is asserted.
    """
    space = problem.space
    if space.kind != "permutation":
        raise DomainError(f"{problem.name}: two-opt needs a permutation space")
    evaluate = _Counter(problem)
    decisions = space.sample(n0, derive_seed(seed, "two-opt"))
    costs = evaluate(decisions)
    index = int(np.argmin(costs))
    order, value = decisions[index], float(costs[index])
    if incumbent is not None and incumbent.cost < value:
        order, value = np.asarray(incumbent.decision), float(incumbent.cost)
    for _ in range(max_iter):
        neighbours = _two_opt_neighbours(order)
        if neighbours.size == 0:
            break
        values = evaluate(neighbours)
        best = int(np.argmin(values))
        if values[best] >= value:
            break
        order, value = neighbours[best], float(values[best])
    return OracleResult(value, order, "two-opt", evaluate.evaluations)
