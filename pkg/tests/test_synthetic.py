import numpy as np
import pytest

from gapcert.percentile.seeding import rng_for
from gapcert.problems import constant_family, constant_problem, step_problem, uniform_gap_family


def test_constant_problem():
    problem = constant_problem(2.5, dims=3)
    assert problem.space.dim == 3
    assert np.all(problem.evaluate(problem.space.sample(10, seed=0)) == 2.5)
    assert problem.bounds == (2.5, 2.5)


step_cases = [
    ([0.0], 0.0),
    ([1e-12], 0.4),
    ([0.5], 0.4),
]


@pytest.mark.parametrize("decision, expected", step_cases)
def test_step_problem(decision, expected):
    assert step_problem(0.4).evaluate_one(decision) == expected


def test_uniform_gap_instances():
    family = uniform_gap_family()
    problem = family.instance(17)
    assert problem.cost.height == rng_for(17, "uniform-gap").random()
    assert problem.optimum == 0.0
    assert family.instance(17).cost.height == problem.cost.height


def test_constant_family_ignores_the_seed():
    family = constant_family(5.0)
    assert family.instance(1).optimum == family.instance(2).optimum == 5.0
    assert family.description == "constant5"
