import logging
from dataclasses import dataclass, field

import numpy as np

from gapcert.errors import DomainError, EvaluationError

logger = logging.getLogger(__name__)


class Problem:
    """A bounded decision space paired with a bounded cost oracle.

    ``cost`` maps one decision to a real. It may also expose
    ``batch(decisions)`` returning one cost per row; batch and per-row
    evaluation must agree.
    """

    def __init__(self, space, cost, name=None, optimum=None, minimizer=None, bounds=None):
        self.space = space
        self.cost = cost
        self.name = name or getattr(cost, "name", None) or type(cost).__name__
        self.optimum = optimum
        self.minimizer = minimizer
        # declared (m, M) with m <= J(s) <= M, when known
        self.bounds = bounds

    def evaluate(self, decisions, offset=0):
        """Costs of a 2-D array of decisions; non-finite costs raise."""
        decisions = np.asarray(decisions)
        if decisions.shape[0] == 0:
            return np.empty(0)
        batch = getattr(self.cost, "batch", None)
        if batch is not None:
            costs = np.asarray(batch(decisions), dtype=float)
        else:
            costs = np.fromiter((self.cost(row) for row in decisions), dtype=float, count=decisions.shape[0])
        bad = np.flatnonzero(~np.isfinite(costs))
        if bad.size:
            index = int(bad[0])
            raise EvaluationError(
                f"{self.name}: non-finite cost {costs[index]} at sample {offset + index} "
                f"for decision {decisions[index].tolist()}",
                decision=decisions[index].tolist(),
                index=offset + index,
            )
        return costs

    def evaluate_one(self, decision):
        return float(self.evaluate(np.asarray(decision)[None, :])[0])

    def __repr__(self):
        return f"Problem({self.name}, {self.space!r})"


@dataclass(frozen=True)
class SampledPoint:
    decision: np.ndarray
    cost: float
    index: int = -1

    def to_dict(self):
        return {"index": self.index, "cost": self.cost, "decision": np.asarray(self.decision).tolist()}


@dataclass
class InfoSet:
    """The (decision, cost) pairs drawn by a percentile solve, in sample order."""

    decisions: np.ndarray
    costs: np.ndarray
    seed: int
    problem_name: str = ""
    # the Problem that produced the samples, when still in memory
    problem: "Problem | None" = field(default=None, repr=False, compare=False)

    @property
    def n_p(self):
        return int(self.costs.shape[0])

    def __len__(self):
        return self.n_p

    def point(self, index):
        return SampledPoint(self.decisions[index], float(self.costs[index]), int(index))

    @property
    def points(self):
        return [self.point(i) for i in range(self.n_p)]


@dataclass
class PercentileSolution:
    best: SampledPoint
    info: InfoSet

    @property
    def cost(self):
        return self.best.cost

    @property
    def decision(self):
        return self.best.decision


@dataclass(frozen=True)
class ConfidenceSpec:
    epsilon: float
    confidence: float = field(default=0.0)

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise DomainError(f"epsilon must lie in [0, 1], got {self.epsilon}")
        if not 0.0 <= self.confidence < 1.0:
            raise DomainError(f"confidence must lie in [0, 1), got {self.confidence}")
