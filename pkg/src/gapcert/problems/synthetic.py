"""Families with analytically known gap distributions."""

import numpy as np

from gapcert.certifiers.repetitive import ProblemFamily
from gapcert.percentile.problem import Problem
from gapcert.percentile.seeding import rng_for
from gapcert.percentile.spaces import BoxSpace


class ConstantCost:

    def __init__(self, value):
        self.value = float(value)
        self.name = f"constant{value:g}"

    def __call__(self, x):
        return self.value

    def batch(self, xs):
        return np.full(np.asarray(xs).shape[0], self.value)


class StepCost:
    """``height`` everywhere except at the lower corner, where it is 0."""

    def __init__(self, height):
        self.height = float(height)
        self.name = "step"

    def __call__(self, x):
        return float(self.batch(np.asarray(x, dtype=float)[None, :])[0])

    def batch(self, xs):
        xs = np.asarray(xs, dtype=float)
        return np.where(np.any(xs > 0.0, axis=1), self.height, 0.0)


def constant_problem(value, dims=1):
    return Problem(
        BoxSpace(np.zeros(dims), np.ones(dims)),
        ConstantCost(value),
        optimum=float(value),
        bounds=(float(value), float(value)),
    )


def step_problem(height):
    # A uniform draw hits x > 0 with probability 1, so any percentile solution
    # has gap exactly ``height``.
    return Problem(
        BoxSpace([0.0], [1.0]),
        StepCost(height),
        optimum=0.0,
        minimizer=np.zeros(1),
        bounds=(0.0, float(height)),
    )


class _Constant:

    def __init__(self, value):
        self.value = value

    def __call__(self, seed):
        return constant_problem(self.value)


class _UniformGap:

    def __call__(self, seed):
        return step_problem(rng_for(seed, "uniform-gap").random())


def constant_family(value=1.0):
    return ProblemFamily(_Constant(float(value)), f"constant{value:g}")


def uniform_gap_family():
    """Family whose percentile gaps are uniform on [0, 1]; pair with the
    ``known`` oracle."""
    return ProblemFamily(_UniformGap(), "uniform-gap")
