import csv
import json

import numpy as np
import pytest

from gapcert.certifiers import (
    EXACT,
    MonteCarlo,
    VarianceModel,
    certify_gap,
    estimate_gap_probability,
    exact_gap_probability,
    exceedance_probability,
    level_set_report,
    level_set_sweep,
    subsample_info,
    variance_many,
)
from gapcert.certifiers.gap import write_level_sets
from gapcert.errors import DomainError
from gapcert.oracles import exhaustive_min
from gapcert.percentile import PermutationSpace, Problem, percentile_solve, solve_by_enumeration
from gapcert.problems import constant_problem, make_benchmark, make_tsp_problem, random_tsp_instance


def model_for(problem, n_p=100, chi=0.1, seed=0):
    info = percentile_solve(problem, n_p, seed=seed).info
    return subsample_info(info, chi, seed=seed, problem=problem)


def ranked_permutations():
    # the first two entries fix a permutation of three, so every cost is distinct
    return Problem(PermutationSpace(3), lambda perm: float(3 * perm[0] + perm[1]), name="ranked")


def test_constant_problem_certifies_zero_gap():
    certificate = certify_gap(model_for(constant_problem(4.0)), 500, 0.01, seed=1)
    assert certificate.v_star == 0.0
    assert certificate.solution_cost == 4.0
    assert certificate.interval == (4.0, 4.0)


def test_small_n_v_warns():
    model = model_for(make_benchmark("beale"))
    assert certify_gap(model, 50, 0.01, seed=2).warnings
    assert certify_gap(model, 500, 0.01, seed=2).warnings == []


def test_certificate_fields():
    model = model_for(make_benchmark("himmelblau"), chi=0.2, seed=3)
    certificate = certify_gap(model, 459, 0.01, seed=4)
    assert certificate.n_v == 459
    assert certificate.confidence >= 0.99
    assert certificate.v_star >= 0.0
    assert certificate.d_indices == model.d_indices.tolist()
    low, high = certificate.interval
    assert high == certificate.solution_cost
    assert low == certificate.solution_cost - certificate.v_star
    payload = json.loads(certificate.to_json())
    assert set(payload) == {"v_star", "n_v", "epsilon", "confidence", "solution_cost", "chi", "seed", "d_indices"}


def test_certify_is_deterministic():
    model = model_for(make_benchmark("levi13"), seed=6)
    assert certify_gap(model, 300, 0.01, seed=7).to_json() == certify_gap(model, 300, 0.01, seed=7).to_json()


@pytest.mark.parametrize("n_v, epsilon", [(0, 0.01), (2.5, 0.01), (10, 0.0), (10, 1.5)])
def test_certify_rejects_bad_arguments(n_v, epsilon):
    with pytest.raises(DomainError):
        certify_gap(model_for(constant_problem(1.0)), n_v, epsilon, seed=0)


def test_exceedance_extremes():
    model = model_for(make_benchmark("ackley"), seed=8)
    mode = MonteCarlo(5000, 9)
    assert exceedance_probability(model, 0.0, mode) == 1.0
    assert exceedance_probability(model, 1e9, mode) == 0.0


def test_exceedance_rejects_negative_threshold():
    with pytest.raises(DomainError):
        exceedance_probability(model_for(constant_problem(1.0)), -1.0, MonteCarlo(10, 0))


def test_level_set_at_zero_counts_retained_costs():
    problem = ranked_permutations()
    info = solve_by_enumeration(problem).info
    model = VarianceModel(problem, info, [0, 2], chi=2 / 6)
    report = level_set_report(model, 0.0, EXACT)
    assert report.fraction == pytest.approx(2 / 6)
    assert report.mode == "exact"
    assert report.samples == 6


def test_level_set_sweep_is_monotone():
    model = model_for(make_benchmark("rastrigrin2"), seed=10)
    radii = np.linspace(0.0, 100.0, 25)
    fractions = [report.fraction for report in level_set_sweep(model, radii, MonteCarlo(4000, 11))]
    assert fractions == sorted(fractions)
    assert fractions[-1] == 1.0


def test_level_set_sweep_matches_single_reports():
    problem = make_tsp_problem(random_tsp_instance(6, seed=12))
    model = model_for(problem, n_p=40, chi=0.25, seed=12)
    radii = [0.0, 0.1, 0.5]
    swept = level_set_sweep(model, radii, EXACT)
    single = [level_set_report(model, r, EXACT) for r in radii]
    assert [r.fraction for r in swept] == [r.fraction for r in single]


def test_level_set_membership_nests_per_sample():
    problem = make_benchmark("ackley")
    model = model_for(problem, n_p=200, chi=0.2, seed=15)
    variances = variance_many(model, problem.evaluate(problem.space.sample(5000, seed=16)))
    rng = np.random.default_rng(17)
    for _ in range(200):
        s, r = np.sort(rng.uniform(0.0, 5.0, size=2))
        assert np.all((variances > s) | (variances <= r))


@pytest.mark.parametrize("mode", [EXACT, MonteCarlo(3000, 18)])
def test_level_set_report_complements_exceedance(mode):
    problem = make_tsp_problem(random_tsp_instance(6, seed=19))
    model = model_for(problem, n_p=40, chi=0.25, seed=19)
    for r in [0.0, 0.2, 1.0]:
        report = level_set_report(model, r, mode)
        assert report.fraction == pytest.approx(1.0 - exceedance_probability(model, r, mode))


def test_gap_probability_estimate_near_exact():
    problem = make_tsp_problem(random_tsp_instance(6, seed=13))
    optimum = exhaustive_min(problem).value
    model = model_for(problem, n_p=10, chi=0.5, seed=13)
    exact = exact_gap_probability(model, optimum)
    assert estimate_gap_probability(model, optimum, 20_000, seed=14) == pytest.approx(exact, abs=0.02)


def test_monte_carlo_mode_needs_samples():
    with pytest.raises(DomainError):
        MonteCarlo(0, 1)


def test_write_level_sets(tmp_path):
    model = model_for(make_benchmark("beale"), seed=15)
    reports = level_set_sweep(model, [0.0, 1.0, 10.0], MonteCarlo(500, 16))
    path = write_level_sets(reports, tmp_path / "levels.csv")
    with path.open(encoding="utf-8") as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == ["r", "fraction"]
    assert [float(row[0]) for row in rows[1:]] == [0.0, 1.0, 10.0]
