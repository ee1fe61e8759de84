import math

import numpy as np
import pytest

from gapcert.errors import DomainError
from gapcert.problems import TspInstance, TspPath, make_tsp_family, random_tsp_instance, tsp_cost

SQUARE = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]

tour_cases = [
    ([0, 1, 2, 3], 4.0),
    ([0, 2, 1, 3], 2.0 + 2.0 * math.sqrt(2.0)),
    ([3, 2, 1, 0], 4.0),
]


@pytest.mark.parametrize("order, expected", tour_cases)
def test_square_tours(order, expected):
    assert tsp_cost(TspInstance(SQUARE), order) == pytest.approx(expected)


def test_rotations_and_reversals_are_identical():
    instance = random_tsp_instance(7, seed=3)
    order = np.array([4, 0, 6, 2, 1, 5, 3])
    reference = tsp_cost(instance, order)
    for shift in range(7):
        rotated = np.roll(order, shift)
        assert tsp_cost(instance, rotated) == reference
        assert tsp_cost(instance, rotated[::-1]) == reference


@pytest.mark.parametrize("order", [[0, 1, 1, 3], [0, 1, 2], [0, 1, 2, 4]])
def test_invalid_paths(order):
    with pytest.raises(DomainError):
        tsp_cost(TspInstance(SQUARE), order)


def test_path_must_be_a_permutation():
    with pytest.raises(DomainError):
        TspPath([1, 2, 3])


@pytest.mark.parametrize("waypoints", [[[0.0, 0.0]], [[0.0, 0.0, 0.0], [1.0, 1.0, 1.0]], [[0.0, 0.0], [np.nan, 1.0]]])
def test_invalid_instances(waypoints):
    with pytest.raises(DomainError):
        TspInstance(waypoints)


def test_random_instance_inside_box():
    instance = random_tsp_instance(50, box=((-2.0, 1.0), (0.0, 3.0)), seed=1)
    assert np.all(instance.waypoints >= [-2.0, 1.0])
    assert np.all(instance.waypoints <= [0.0, 3.0])


def test_family_is_deterministic():
    family = make_tsp_family(6, seed=2)
    first = family.instance(11).cost.instance.waypoints
    assert np.array_equal(first, family.instance(11).cost.instance.waypoints)
    assert not np.array_equal(first, family.instance(12).cost.instance.waypoints)
    assert not np.array_equal(first, make_tsp_family(6, seed=3).instance(11).cost.instance.waypoints)
    assert "paths=720" in family.description
