import logging
import math

import numpy as np

from gapcert.errors import DomainError
from gapcert.percentile.seeding import rng_for

logger = logging.getLogger(__name__)


class VarianceModel:
    """Variance function built from a subset ``D`` of an information set.

    The variance of a decision is the smallest absolute difference between its
    cost and the costs retained in ``D``.
    """

    def __init__(self, base, info, d_indices, chi, seed=None):
        d_indices = np.asarray(d_indices, dtype=np.intp)
        if d_indices.size == 0:
            raise DomainError("the retained subset D must be nonempty")
        self.base = base
        self.info = info
        self.d_indices = d_indices
        self.chi = float(chi)
        self.seed = seed
        self.sorted_costs = np.sort(info.costs[d_indices])

    @property
    def d_set(self):
        return [self.info.point(int(i)) for i in self.d_indices]

    def __len__(self):
        return int(self.d_indices.size)

    def __repr__(self):
        return f"VarianceModel({self.base.name}, |D|={len(self)}, chi={self.chi})"


def subset_size(n, chi):
    return max(1, math.floor(chi * n))


def subsample_info(info, chi, seed, problem=None):
    """Uniform subsample of ``max(1, floor(chi * |info|))`` points without replacement.

    ``problem`` defaults to the one the information set was drawn from; an
    information set read back from disk needs it passed explicitly.
    """
    problem = problem if problem is not None else info.problem
    if problem is None:
        raise DomainError(f"information set {info.problem_name!r} carries no problem; pass one to subsample it")
    if info.n_p == 0:
        raise DomainError("cannot build a variance model from an empty information set")
    if not 0.0 < chi <= 1.0:
        raise DomainError(f"chi must lie in (0, 1], got {chi}")
    size = subset_size(info.n_p, chi)
    if size == info.n_p:
        d_indices = np.arange(info.n_p)
    else:
        d_indices = np.sort(rng_for(seed, "subsample").choice(info.n_p, size=size, replace=False))
    return VarianceModel(problem, info, d_indices, chi, seed=seed)


def variance_many(model, costs):
    """Variance of every cost in ``costs`` against the retained subset."""
    costs = np.asarray(costs, dtype=float)
    reference = model.sorted_costs
    right = np.clip(np.searchsorted(reference, costs), 0, reference.size - 1)
    left = np.clip(right - 1, 0, reference.size - 1)
    return np.minimum(np.abs(costs - reference[left]), np.abs(costs - reference[right]))


def variance_at(model, decision):
    # exactly one cost evaluation
    return float(variance_many(model, [model.base.evaluate_one(decision)])[0])
