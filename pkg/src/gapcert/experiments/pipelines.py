import logging
from functools import partial

import numpy as np
from scipy import stats

from gapcert.certifiers import (
    EXACT,
    LevelSetReport,
    MonteCarlo,
    certify_gap,
    coverage_threshold,
    estimate_gap_probability,
    exact_gap_probability,
    sample_gap,
    subsample_info,
    variance_many,
)
from gapcert.certifiers.gap import mode_costs, write_level_sets
from gapcert.certifiers.repetitive import GapSample, write_gap_samples
from gapcert.experiments.report import Check, write_records
from gapcert.experiments.selection import build_family, build_problem, tsp_instance
from gapcert.experiments.trials import timed
from gapcert.oracles import run_oracle
from gapcert.percentile import confidence_of, derive_seed, min_samples, percentile_solve
from gapcert.percentile.io import write_info_set
from gapcert.problems import make_benchmark, make_tsp_problem

logger = logging.getLogger(__name__)

CERTIFY_COLUMNS = ["trial", "v_star", "true_gap", "covered", "solution_cost", "p"]
CHI_COLUMNS = ["chi", "d_size", "p", "gap", "max_variance", "n_v_required"]


def success_floor(q, n, alpha=0.001):
    """Lowest success fraction of ``n`` trials at rate ``q`` that is not
    rejected at level ``alpha`` (exact binomial quantile)."""
    return float(stats.binom.ppf(alpha, n, q)) / n


def _certify_trial(problem, optimum, n_p, n_v, chi, epsilon, p_samples, seed, index):
    trial_seed = derive_seed(seed, "trial", index)
    solution = percentile_solve(problem, n_p, derive_seed(trial_seed, "solve"))
    model = subsample_info(solution.info, chi, derive_seed(trial_seed, "subsample"), problem)
    certificate, seconds = timed(certify_gap, model, n_v, epsilon, derive_seed(trial_seed, "certify"))
    true_gap = max(solution.cost - optimum, 0.0)
    record = {
        "v_star": certificate.v_star,
        "true_gap": true_gap,
        "covered": certificate.covers(true_gap),
        "solution_cost": solution.cost,
        "p": estimate_gap_probability(model, optimum, p_samples, derive_seed(trial_seed, "p")),
    }
    return record, seconds


def fairness_summary(name, records, epsilon, confidence):
    """Trials whose estimated ``p`` reaches ``epsilon`` and their success fraction.

    The certificate's confidence only holds for those trials.
    """
    fair = [record for record in records if record["p"] >= epsilon]
    summary = {
        "mean_p": float(np.mean([record["p"] for record in records])),
        "fair_trials": len(fair),
        "fair_success_fraction": sum(record["covered"] for record in fair) / len(fair) if fair else None,
    }
    if len(fair) < len(records):
        logger.warning(
            "%s: p < epsilon=%g in %d of %d trials, confidence %.4f does not apply to them",
            name, epsilon, len(records) - len(fair), len(records), confidence,
        )
    return summary


def run_solve(config, ctx):
    problem = build_problem(config)
    epsilon = config.resolved_epsilon()
    solution, seconds = timed(percentile_solve, problem, config.n_p, derive_seed(config.seed, "solve"))
    ctx.timings.append(("solve", 0, seconds))
    write_info_set(solution.info, ctx.out_dir / "info_set.csv", space=problem.space)
    records = [{"stage": "solve", **point.to_dict()} for point in solution.info.points]
    summary = {
        "problem": problem.name,
        "n_p": config.n_p,
        "best_index": solution.best.index,
        "best_cost": solution.cost,
        "best_decision": np.asarray(solution.decision).tolist(),
        "epsilon": epsilon,
        "confidence": confidence_of(epsilon, config.n_p),
    }
    logger.info("%s: best cost %.6g of %d samples", problem.name, solution.cost, config.n_p)
    return records, summary, []


def run_certify(config, ctx):
    problem = build_problem(config)
    epsilon = config.resolved_epsilon()
    n_v = config.n_v or min_samples(epsilon, config.confidence)
    oracle = run_oracle(problem, config.resolved_oracle(), seed=derive_seed(config.seed, "oracle"))
    trial = partial(
        _certify_trial, problem, oracle.value, config.n_p, n_v, config.chi, epsilon, config.p_samples, config.seed
    )
    records = ctx.map_trials("certify", trial, config.trials)
    write_records(records, CERTIFY_COLUMNS, ctx.out_dir / "certify.csv")
    confidence = confidence_of(epsilon, n_v)
    fraction = sum(record["covered"] for record in records) / len(records)
    summary = {
        "problem": problem.name,
        "optimum": oracle.value,
        "oracle": oracle.method,
        "n_p": config.n_p,
        "n_v": n_v,
        "epsilon": epsilon,
        "confidence": confidence,
        "success_fraction": fraction,
        "mean_v_star": float(np.mean([record["v_star"] for record in records])),
        **fairness_summary(problem.name, records, epsilon, confidence),
    }
    checks = [Check("certify success fraction", fraction, success_floor(confidence, len(records)))]
    return records, summary, checks


def _chi_point(problem, info, optimum, chis, p_samples, levels, seed, index):
    chi = chis[index]
    model = subsample_info(info, chi, derive_seed(seed, "chi", index), problem)
    mode = EXACT if problem.space.finite else MonteCarlo(p_samples, derive_seed(seed, "chi", index, "p"))
    gap = max(float(info.costs.min()) - optimum, 0.0)
    variances = variance_many(model, mode_costs(model, mode))
    p = float(np.count_nonzero(variances > gap)) / variances.size
    radii = np.linspace(0.0, float(variances.max()), levels)
    return {
        "chi": chi,
        "d_size": len(model),
        "p": p,
        "gap": gap,
        "max_variance": float(variances.max()),
        "n_v_required": min_samples(p, 0.999) if p > 0 else None,
        "levels": [[float(r), float(np.count_nonzero(variances <= r)) / variances.size] for r in radii],
    }


def _chi_trial(*args):
    return timed(_chi_point, *args)


def run_chi_sweep(config, ctx):
    problem = build_problem(config)
    solution = percentile_solve(problem, config.n_p, derive_seed(config.seed, "solve"))
    oracle = run_oracle(problem, config.resolved_oracle(), seed=derive_seed(config.seed, "oracle"), incumbent=solution.best)
    chis = tuple(config.chis)
    trial = partial(_chi_trial, problem, solution.info, oracle.value, chis, config.p_samples, config.levels, config.seed)
    records = ctx.map_trials("chi-sweep", trial, len(chis))
    for record in records:
        path = ctx.out_dir / f"level_sets_chi{record['chi']:g}.csv"
        reports = [LevelSetReport(radius, fraction, "chi-sweep", record["d_size"]) for radius, fraction in record["levels"]]
        write_level_sets(reports, path)
    write_records(records, CHI_COLUMNS, ctx.out_dir / "chi_sweep.csv")
    summary = {
        "problem": problem.name,
        "solution_cost": solution.cost,
        "optimum": oracle.value,
        "gap": max(solution.cost - oracle.value, 0.0),
        "p": {f"{record['chi']:g}": record["p"] for record in records},
    }
    return records, summary, []


def run_table1(config, ctx):
    epsilon = config.resolved_epsilon()
    n_v = config.n_v or min_samples(epsilon, config.confidence)
    confidence = confidence_of(epsilon, n_v)
    records, rows, checks = [], {}, []
    for name in config.benchmarks:
        problem = make_benchmark(name)
        seed = derive_seed(config.seed, name)
        oracle = run_oracle(problem, config.resolved_oracle(), seed=derive_seed(seed, "oracle"))
        trial = partial(
            _certify_trial, problem, oracle.value, config.n_p, n_v, config.chi, epsilon, config.p_samples, seed
        )
        stage = f"table1:{name}"
        done = ctx.map_trials(stage, trial, config.trials)
        records.extend({**record, "benchmark": name} for record in done)
        fraction = sum(record["covered"] for record in done) / len(done)
        seconds = [s for label, _, s in ctx.timings if label == stage]
        rows[name] = {
            "success_fraction": fraction,
            "optimum": oracle.value,
            **fairness_summary(name, done, epsilon, confidence),
        }
        if seconds:
            logger.info("%s: success %.3f, mean certify %.2f ms", name, fraction, 1e3 * float(np.mean(seconds)))
        checks.append(Check(f"{name} success fraction", fraction, success_floor(confidence, len(done))))
    summary = {"n_p": config.n_p, "n_v": n_v, "epsilon": epsilon, "confidence": confidence, "benchmarks": rows}
    return records, summary, checks


def _fig2_trial(model, n_v, epsilon, gap, seed, index):
    certificate, seconds = timed(certify_gap, model, n_v, epsilon, derive_seed(seed, index))
    return {"v_star": certificate.v_star, "true_gap": gap, "covered": certificate.covers(gap), "n_v": n_v}, seconds


def run_tsp_fig2(config, ctx):
    problem = make_tsp_problem(tsp_instance(config))
    oracle = run_oracle(problem, config.resolved_oracle())
    solution = percentile_solve(problem, config.n_p, derive_seed(config.seed, "solve"))
    model = subsample_info(solution.info, config.chi, derive_seed(config.seed, "subsample"), problem)
    gap = max(solution.cost - oracle.value, 0.0)
    p = exact_gap_probability(model, oracle.value)
    epsilon = config.resolved_epsilon() or p
    summary = {
        "problem": problem.name,
        "optimum": oracle.value,
        "solution_cost": solution.cost,
        "length_ratio": solution.cost / oracle.value,
        "gap": gap,
        "p": p,
        "epsilon": epsilon,
        "fairness_violated": epsilon == 0.0,
        "confidences": [],
    }
    records, checks = [], []
    for index, target in enumerate(config.confidences):
        if epsilon == 0.0:
            # no decision's variance exceeds the gap, so nothing can certify it
            logger.warning("%s: p = 0, counting every trial at confidence %g as a failure", problem.name, target)
            done = [
                {"stage": f"tsp-fig2:{target:g}", "trial": t, "v_star": None, "true_gap": gap, "covered": False, "n_v": None}
                for t in range(config.trials)
            ]
            n_v = None
        else:
            n_v = min_samples(epsilon, target)
            trial = partial(_fig2_trial, model, n_v, epsilon, gap, derive_seed(config.seed, "confidence", index))
            done = ctx.map_trials(f"tsp-fig2:{target:g}", trial, config.trials)
        records.extend({**record, "confidence": target} for record in done)
        fraction = sum(record["covered"] for record in done) / len(done)
        summary["confidences"].append(
            {"confidence": target, "n_v": n_v, "budget": config.n_p + (n_v or 0), "success_fraction": fraction}
        )
        checks.append(Check(f"success fraction at confidence {target:g}", fraction, success_floor(target, len(done))))
        logger.info("%s: confidence %g, n_v=%s, success %.4f", problem.name, target, n_v, fraction)
    return records, summary, checks


def _gap_trial(family, n_p, oracle_cfg, seed, stream, index):
    sample, seconds = timed(sample_gap, family, n_p, oracle_cfg, derive_seed(seed, stream, index))
    record = {
        "n_p": n_p,
        "stream": stream,
        "instance_seed": sample.instance_seed,
        "solution_cost": sample.solution_cost,
        "oracle_value": sample.oracle_value,
        "oracle_method": sample.oracle_method,
        "gamma": sample.gamma,
    }
    return record, seconds


def _as_gap_samples(records):
    return [
        GapSample(
            gamma=record["gamma"],
            instance_seed=record["instance_seed"],
            solution_cost=record["solution_cost"],
            oracle_value=record["oracle_value"],
            oracle_method=record["oracle_method"],
        )
        for record in records
    ]


def _repetitive_stage(config, ctx, family, n_p, r, epsilon):
    """Certificate from ``r`` gap samples plus its coverage on ``m`` fresh
    instances; seeds match ``build_certificate`` and ``validation_samples``."""
    oracle_cfg = config.resolved_oracle()
    seed = derive_seed(config.seed, "n_p", n_p)
    gaps = ctx.map_trials(f"gap:{n_p}", partial(_gap_trial, family, n_p, oracle_cfg, seed, "gap"), r)
    fresh = ctx.map_trials(f"validate:{n_p}", partial(_gap_trial, family, n_p, oracle_cfg, seed, "validate"), config.m)
    write_gap_samples(_as_gap_samples(gaps), ctx.out_dir / f"gap_samples_np{n_p}.csv")
    write_gap_samples(_as_gap_samples(fresh), ctx.out_dir / f"validation_np{n_p}.csv")
    gamma_star = max(record["gamma"] for record in gaps)
    coverage = sum(record["gamma"] <= gamma_star for record in fresh) / len(fresh)
    row = {
        "n_p": n_p,
        "r": r,
        "gamma_star": gamma_star,
        "confidence": confidence_of(epsilon, r),
        "coverage": coverage,
        "quantile": float(np.quantile([record["gamma"] for record in fresh], 1.0 - epsilon)),
        "zero_gap_fraction": sum(record["gamma"] == 0.0 for record in gaps + fresh) / (len(gaps) + len(fresh)),
    }
    if gamma_star == 0.0:
        logger.warning(
            "%s n_p=%d: all %d gap samples are 0, coverage only counts fresh gaps that are exactly 0",
            family.description, n_p, r,
        )
    logger.info("%s n_p=%d: gamma_star=%.6g, coverage %.4f", family.description, n_p, gamma_star, coverage)
    check = Check(f"coverage at n_p={n_p}", coverage, coverage_threshold(epsilon, len(fresh)))
    return gaps + fresh, row, check


def run_mpc_fig4(config, ctx):
    family = build_family(config)
    epsilon = config.resolved_epsilon()
    r = config.r or min_samples(epsilon, config.confidence)
    records, rows, checks = [], [], []
    for n_p in config.n_p_list:
        done, row, check = _repetitive_stage(config, ctx, family, n_p, r, epsilon)
        records.extend(done)
        rows.append(row)
        checks.append(check)
    stars = [row["gamma_star"] for row in rows]
    if any(later > earlier for earlier, later in zip(stars, stars[1:])):
        logger.info("gamma_star does not decline with n_p: %s", stars)
    return records, {"family": family.description, "epsilon": epsilon, "r": r, "n_p": rows}, checks


def run_validate(config, ctx):
    family = build_family(config)
    epsilon = config.resolved_epsilon()
    r = config.r or min_samples(epsilon, config.confidence)
    records, row, check = _repetitive_stage(config, ctx, family, config.n_p, r, epsilon)
    return records, {"family": family.description, "epsilon": epsilon, "r": r, "n_p": [row]}, [check]


PIPELINES = {
    "solve": run_solve,
    "certify": run_certify,
    "chi-sweep": run_chi_sweep,
    "table1": run_table1,
    "tsp-fig2": run_tsp_fig2,
    "mpc-fig4": run_mpc_fig4,
    "validate": run_validate,
}
