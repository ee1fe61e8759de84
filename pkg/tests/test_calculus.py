import pytest

from gapcert.errors import DomainError
from gapcert.percentile import ConfidenceSpec, confidence_of, min_samples

min_sample_cases = [
    (0.1083, 0.7, 11),
    (0.1083, 0.999, 61),
    (0.01, 0.99, 459),
    (1.0, 0.9, 1),
    (0.5, 0.0, 1),
]


@pytest.mark.parametrize("epsilon, confidence, expected", min_sample_cases)
def test_min_samples(epsilon, confidence, expected):
    assert min_samples(epsilon, confidence) == expected


confidence_cases = [
    (0.5, 1, 0.5),
    (0.001, 5000, 0.993279),
    (0.0, 10, 0.0),
    (1.0, 3, 1.0),
]


@pytest.mark.parametrize("epsilon, n, expected", confidence_cases)
def test_confidence_of(epsilon, n, expected):
    assert confidence_of(epsilon, n) == pytest.approx(expected, abs=1e-6)


def test_confidence_of_table_setting():
    assert confidence_of(0.01, 300) == pytest.approx(1.0 - 0.99 ** 300, rel=1e-12)
    assert confidence_of(0.01, 300) == pytest.approx(0.95096, abs=1e-5)


def test_large_tsp_solve_confidence():
    assert confidence_of(0.001, 5000) >= 0.99


grid = [(epsilon, confidence) for epsilon in (0.001, 0.01, 0.05, 0.1083, 0.3, 0.9) for confidence in (0.1, 0.5, 0.7, 0.95, 0.99, 0.999)]


@pytest.mark.parametrize("epsilon, confidence", grid)
def test_min_samples_is_smallest(epsilon, confidence):
    n = min_samples(epsilon, confidence)
    assert confidence_of(epsilon, n) >= confidence
    if n > 1:
        assert confidence_of(epsilon, n - 1) < confidence


def test_confidence_monotone():
    values = [confidence_of(0.02, n) for n in range(1, 200)]
    assert values == sorted(values)
    values = [confidence_of(e / 100, 50) for e in range(0, 101)]
    assert values == sorted(values)


bad_arguments = [
    (confidence_of, (-0.1, 5)),
    (confidence_of, (1.1, 5)),
    (confidence_of, (0.5, 0)),
    (confidence_of, (0.5, 2.5)),
    (min_samples, (0.0, 0.9)),
    (min_samples, (0.5, 1.0)),
    (min_samples, (0.5, -0.1)),
    (min_samples, (1.5, 0.5)),
]


@pytest.mark.parametrize("function, arguments", bad_arguments)
def test_domain_errors(function, arguments):
    with pytest.raises(DomainError):
        function(*arguments)


def test_confidence_spec_ranges():
    assert ConfidenceSpec(0.01, 0.99).epsilon == 0.01
    with pytest.raises(DomainError):
        ConfidenceSpec(0.01, 1.0)
    with pytest.raises(DomainError):
        ConfidenceSpec(-0.01, 0.5)
