import json
import math
from pathlib import Path

import numpy as np

from gapcert.certifiers.repetitive import ProblemFamily
from gapcert.errors import DomainError
from gapcert.percentile.problem import Problem
from gapcert.percentile.seeding import rng_for
from gapcert.percentile.spaces import PermutationSpace


class TspInstance:

    def __init__(self, waypoints):
        waypoints = np.asarray(waypoints, dtype=float)
        if waypoints.ndim != 2 or waypoints.shape[1] != 2:
            raise DomainError("waypoints must be a list of 2-D points")
        if waypoints.shape[0] < 2:
            raise DomainError("a TSP instance needs at least 2 waypoints")
        if not np.all(np.isfinite(waypoints)):
            raise DomainError("waypoints must be finite")
        self.waypoints = waypoints
        self.distances = np.linalg.norm(waypoints[:, None, :] - waypoints[None, :, :], axis=-1)

    @property
    def count(self):
        return self.waypoints.shape[0]

    def to_dict(self):
        return {"waypoints": self.waypoints.tolist()}

    def __repr__(self):
        return f"TspInstance(count={self.count})"


class TspPath:

    def __init__(self, order):
        order = np.asarray(order, dtype=np.intp)
        if order.ndim != 1 or not np.array_equal(np.sort(order), np.arange(order.size)):
            raise DomainError(f"{order.tolist()} is not a permutation")
        self.order = order

    def __repr__(self):
        return f"TspPath({self.order.tolist()})"


def tour_lengths(instance, orders):
    """Closed-tour lengths of a 2-D array of orders, one tour per row."""
    orders = np.asarray(orders, dtype=np.intp)
    following = np.roll(orders, -1, axis=1)
    # summing sorted edge lengths makes rotations and reversals of a tour
    # produce bit-identical lengths
    return np.sort(instance.distances[orders, following], axis=1).sum(axis=1)


def tsp_cost(instance, path):
    """Length of the closed tour visiting the waypoints in ``path`` order."""
    if not isinstance(path, TspPath):
        path = TspPath(path)
    if path.order.size != instance.count:
        raise DomainError(f"path visits {path.order.size} waypoints, instance has {instance.count}")
    return float(tour_lengths(instance, path.order[None, :])[0])


class TourLength:
    """Cost oracle of a TSP instance over permutation decisions."""

    name = "tsp"

    def __init__(self, instance):
        self.instance = instance

    def __call__(self, order):
        return tsp_cost(self.instance, order)

    def batch(self, orders):
        return tour_lengths(self.instance, orders)


def make_tsp_problem(instance):
    # every tour edge is at most the diameter
    diameter = float(instance.distances.max())
    return Problem(
        PermutationSpace(instance.count),
        TourLength(instance),
        name=f"tsp{instance.count}",
        bounds=(0.0, instance.count * diameter),
    )


def random_tsp_instance(n_waypoints, box=((0.0, 0.0), (1.0, 1.0)), seed=0):
    lower, upper = np.asarray(box[0], dtype=float), np.asarray(box[1], dtype=float)
    if int(n_waypoints) < 2:
        raise DomainError("a TSP instance needs at least 2 waypoints")
    if np.any(lower >= upper):
        raise DomainError("TSP box requires lower < upper")
    u = rng_for(seed, "tsp-waypoints").random((int(n_waypoints), 2))
    return TspInstance(lower + u * (upper - lower))


class _RandomTsp:

    def __init__(self, n_waypoints, box, family_seed):
        self.n_waypoints = n_waypoints
        self.box = box
        self.family_seed = family_seed

    def __call__(self, seed):
        return make_tsp_problem(random_tsp_instance(self.n_waypoints, self.box, seed ^ self.family_seed))


def make_tsp_family(n_waypoints, box=((0.0, 0.0), (1.0, 1.0)), seed=0):
    """Family of TSP instances with ``n_waypoints`` uniform in ``box``.

    Instances depend on both the family ``seed`` and their instance seed.
    """
    if int(n_waypoints) < 2:
        raise DomainError("a TSP family needs at least 2 waypoints")
    return ProblemFamily(
        _RandomTsp(int(n_waypoints), box, int(seed)),
        f"tsp{n_waypoints} paths={math.factorial(int(n_waypoints))} seed={seed}",
    )


def read_tsp_instance(path):
    return TspInstance(json.loads(Path(path).read_text(encoding="utf-8"))["waypoints"])


def write_tsp_instance(instance, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(instance.to_dict()) + "\n", encoding="utf-8")
    return path
