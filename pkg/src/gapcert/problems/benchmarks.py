from dataclasses import dataclass

import numpy as np

from gapcert.errors import DomainError
from gapcert.percentile.problem import Problem
from gapcert.percentile.spaces import BoxSpace


# Each function takes a 2-D array of points (one per row) and returns one
# value per row.

def rastrigrin(x):
    x = np.atleast_2d(x)
    return 10.0 * x.shape[1] + np.sum(x ** 2 - 10.0 * np.cos(2.0 * np.pi * x), axis=1)


def ackley(x):
    x = np.atleast_2d(x)
    d = x.shape[1]
    s1 = np.sum(x ** 2, axis=1)
    s2 = np.sum(np.cos(2.0 * np.pi * x), axis=1)
    return -20.0 * np.exp(-0.2 * np.sqrt(s1 / d)) - np.exp(s2 / d) + 20.0 + np.e


def beale(x):
    x1, x2 = np.atleast_2d(x).T
    return (
        (1.5 - x1 + x1 * x2) ** 2
        + (2.25 - x1 + x1 * x2 ** 2) ** 2
        + (2.625 - x1 + x1 * x2 ** 3) ** 2
    )


def levi13(x):
    x1, x2 = np.atleast_2d(x).T
    return (
        np.sin(3.0 * np.pi * x1) ** 2
        + (x1 - 1.0) ** 2 * (1.0 + np.sin(3.0 * np.pi * x2) ** 2)
        + (x2 - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * x2) ** 2)
    )


def himmelblau(x):
    x1, x2 = np.atleast_2d(x).T
    return (x1 ** 2 + x2 - 11.0) ** 2 + (x1 + x2 ** 2 - 7.0) ** 2


@dataclass(frozen=True)
class BenchmarkSpec:
    name: str
    dims: int
    lower: float
    upper: float
    function: object
    optimum: float
    minimizer: tuple


# Canonical definitions. Rastrigrin follows 10*d + sum(x^2 - 10 cos(2 pi x))
# on [-5.12, 5.12]^d. Ackley (a=20, b=0.2, c=2 pi) uses the [-5, 5] box of the
# 2-D test-function collections; Beale [-4.5, 4.5], Levi N.13 [-10, 10] and
# Himmelblau [-5, 5] are the usual textbook domains. Himmelblau has three more
# zero minimisers besides (3, 2).
BENCHMARKS = {
    "rastrigrin2": BenchmarkSpec("rastrigrin2", 2, -5.12, 5.12, rastrigrin, 0.0, (0.0, 0.0)),
    "rastrigrin10": BenchmarkSpec("rastrigrin10", 10, -5.12, 5.12, rastrigrin, 0.0, (0.0,) * 10),
    "ackley": BenchmarkSpec("ackley", 2, -5.0, 5.0, ackley, 0.0, (0.0, 0.0)),
    "beale": BenchmarkSpec("beale", 2, -4.5, 4.5, beale, 0.0, (3.0, 0.5)),
    "levi13": BenchmarkSpec("levi13", 2, -10.0, 10.0, levi13, 0.0, (1.0, 1.0)),
    "himmelblau": BenchmarkSpec("himmelblau", 2, -5.0, 5.0, himmelblau, 0.0, (3.0, 2.0)),
}


def benchmark_spec(name):
    try:
        return BENCHMARKS[name]
    except KeyError:
        raise DomainError(f"unknown benchmark {name!r}; choose from {sorted(BENCHMARKS)}") from None


class BenchmarkCost:

    def __init__(self, spec):
        self.spec = spec
        self.name = spec.name

    def __call__(self, x):
        return float(self.spec.function(np.asarray(x, dtype=float)[None, :])[0])

    def batch(self, xs):
        return self.spec.function(np.asarray(xs, dtype=float))


def make_benchmark(spec):
    """Problem for a benchmark spec (or its name) on its canonical box."""
    if isinstance(spec, str):
        spec = benchmark_spec(spec)
    elif spec.name not in BENCHMARKS or BENCHMARKS[spec.name] != spec:
        raise DomainError(f"{spec.name!r} does not match the canonical benchmark table")
    space = BoxSpace(np.full(spec.dims, spec.lower), np.full(spec.dims, spec.upper))
    return Problem(
        space,
        BenchmarkCost(spec),
        name=spec.name,
        optimum=spec.optimum,
        minimizer=np.asarray(spec.minimizer, dtype=float),
    )
