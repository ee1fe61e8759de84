import itertools
import math
from abc import ABC, abstractmethod

import numpy as np

from gapcert.errors import CapacityError, DomainError, SamplingError
from gapcert.percentile.seeding import rng_for

# Per-row attempt block for annulus rejection sampling. A row that exhausts its
# block falls back to its own indexed stream.
ANNULUS_ATTEMPTS = 64
ANNULUS_MAX_REJECTIONS = 10_000


class DecisionSpace(ABC):
    """A bounded decision space with a uniform sampler.

    Samples are returned as a 2-D array, one decision per row. Sample ``i``
    consumes a fixed block of the seeded stream, so the first ``k`` rows of an
    ``n``-draw equal a ``k``-draw with the same seed.
    """

    kind = None
    finite = False

    @property
    @abstractmethod
    def dim(self):
        pass

    @abstractmethod
    def sample(self, n, seed):
        pass

    @abstractmethod
    def contains(self, decisions):
        pass

    def project(self, decisions):
        return decisions

    def cardinality(self):
        raise DomainError(f"{self.kind} space is not finite")

    def enumerate(self, chunk=65_536, limit=None):
        raise DomainError(f"{self.kind} space cannot be enumerated")

    def describe(self):
        return {"kind": self.kind, "dim": self.dim}


class BoxSpace(DecisionSpace):

    kind = "box"

    def __init__(self, lower, upper):
        lower = np.atleast_1d(np.asarray(lower, dtype=float))
        upper = np.atleast_1d(np.asarray(upper, dtype=float))
        if lower.shape != upper.shape or lower.ndim != 1:
            raise DomainError("box bounds must be 1-D arrays of equal length")
        if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            raise DomainError("box bounds must be finite")
        if np.any(lower >= upper):
            raise DomainError("box requires lower[i] < upper[i] in every dimension")
        self.lower = lower
        self.upper = upper

    @property
    def dim(self):
        return self.lower.size

    @property
    def widths(self):
        return self.upper - self.lower

    def volume(self):
        return float(np.prod(self.widths))

    def sample(self, n, seed):
        u = rng_for(seed).random((int(n), self.dim))
        return self.lower + u * self.widths

    def contains(self, decisions):
        decisions = np.asarray(decisions, dtype=float)
        return np.all((decisions >= self.lower) & (decisions <= self.upper), axis=-1)

    def project(self, decisions):
        return np.clip(decisions, self.lower, self.upper)

    def describe(self):
        return {"kind": self.kind, "dim": self.dim, "lower": self.lower.tolist(), "upper": self.upper.tolist()}

    def __repr__(self):
        return f"BoxSpace(lower={self.lower.tolist()}, upper={self.upper.tolist()})"


class PermutationSpace(DecisionSpace):

    kind = "permutation"
    finite = True

    def __init__(self, n):
        if int(n) < 2:
            raise DomainError("permutation space needs n >= 2")
        self.n = int(n)

    @property
    def dim(self):
        return self.n

    def cardinality(self):
        return math.factorial(self.n)

    def sample(self, n, seed):
        # Sequential random-swap shuffle; the swap indices of every row are
        # drawn as one row-major block so rows stay prefix-stable.
        count = int(n)
        highs = np.arange(self.n, 1, -1)
        swaps = rng_for(seed).integers(0, highs, size=(count, self.n - 1))
        perms = np.tile(np.arange(self.n), (count, 1))
        rows = np.arange(count)
        for col, i in enumerate(range(self.n - 1, 0, -1)):
            j = swaps[:, col]
            held = perms[rows, i].copy()
            perms[rows, i] = perms[rows, j]
            perms[rows, j] = held
        return perms

    def contains(self, decisions):
        decisions = np.asarray(decisions)
        return np.all(np.sort(decisions, axis=-1) == np.arange(self.n), axis=-1)

    def enumerate(self, chunk=65_536, limit=None):
        """Yield every permutation in lexicographic order, ``chunk`` rows at a time."""
        if limit is not None and self.cardinality() > limit:
            raise CapacityError(self.cardinality(), limit)
        source = itertools.permutations(range(self.n))
        while True:
            block = list(itertools.islice(source, chunk))
            if not block:
                return
            yield np.array(block, dtype=np.intp)

    def describe(self):
        return {"kind": self.kind, "dim": self.dim, "n": self.n}

    def __repr__(self):
        return f"PermutationSpace(n={self.n})"


class AnnulusSpace(DecisionSpace):
    """Planar annulus around ``center`` intersected with a box."""

    kind = "waypoint-annulus"

    def __init__(self, center, r_min, r_max, lower, upper):
        self.center = np.asarray(center, dtype=float).reshape(2)
        if not 0 <= r_min < r_max:
            raise DomainError("annulus requires 0 <= r_min < r_max")
        self.r_min = float(r_min)
        self.r_max = float(r_max)
        self.box = BoxSpace(lower, upper)
        if self.box.dim != 2:
            raise DomainError("annulus box must be planar")

    @property
    def dim(self):
        return 2

    def _polar(self, u):
        radius = np.sqrt(self.r_min ** 2 + u[..., 0] * (self.r_max ** 2 - self.r_min ** 2))
        angle = 2.0 * np.pi * u[..., 1]
        return self.center + np.stack([radius * np.cos(angle), radius * np.sin(angle)], axis=-1)

    def sample(self, n, seed):
        count = int(n)
        candidates = self._polar(rng_for(seed).random((count, ANNULUS_ATTEMPTS, 2)))
        inside = self.box.contains(candidates)
        first = np.argmax(inside, axis=1)
        out = candidates[np.arange(count), first]
        for row in np.flatnonzero(~inside.any(axis=1)):
            out[row] = self._fallback(seed, int(row))
        return out

    def _fallback(self, seed, row):
        rng = rng_for(seed, "annulus", row)
        for _ in range(ANNULUS_MAX_REJECTIONS):
            point = self._polar(rng.random(2))
            if self.box.contains(point):
                return point
        raise SamplingError(f"annulus around {self.center.tolist()} rejected {ANNULUS_MAX_REJECTIONS} draws")

    def contains(self, decisions):
        decisions = np.asarray(decisions, dtype=float)
        radius = np.linalg.norm(decisions - self.center, axis=-1)
        return (radius >= self.r_min) & (radius <= self.r_max) & self.box.contains(decisions)

    def project(self, decisions):
        offset = np.asarray(decisions, dtype=float) - self.center
        radius = np.linalg.norm(offset, axis=-1, keepdims=True)
        scale = np.clip(radius, self.r_min, self.r_max) / np.where(radius > 0, radius, 1.0)
        return self.box.project(self.center + offset * scale)

    @property
    def widths(self):
        return np.full(2, 2.0 * self.r_max)

    def describe(self):
        return {
            "kind": self.kind,
            "dim": 2,
            "center": self.center.tolist(),
            "r_min": self.r_min,
            "r_max": self.r_max,
            "lower": self.box.lower.tolist(),
            "upper": self.box.upper.tolist(),
        }

    def __repr__(self):
        return f"AnnulusSpace(center={self.center.tolist()}, r=[{self.r_min}, {self.r_max}])"
