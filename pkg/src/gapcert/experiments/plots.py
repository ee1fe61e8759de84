"""Plot-ready CSV for the bound-versus-gap, gap-histogram and benchmark-table
figures. Rendering is left to external tools."""

from pathlib import Path

import numpy as np

from gapcert.config import DEFAULT_EPSILON
from gapcert.errors import DomainError
from gapcert.experiments.report import write_records

PLOT_EXPERIMENTS = {
    "fig2": ("certify", "tsp-fig2"),
    "fig4": ("mpc-fig4", "validate"),
    "table1": ("table1",),
}
PLOT_KINDS = {experiment: kind for kind, experiments in PLOT_EXPERIMENTS.items() for experiment in experiments}

BOUND_COLUMNS = ["trial", "v_star", "true_gap"]
RUNNING_COLUMNS = ["trial", "success_fraction"]
HISTOGRAM_COLUMNS = ["n_p", "bin_left", "bin_right", "count"]
MARKER_COLUMNS = ["n_p", "gamma_star", "quantile"]
TABLE1_COLUMNS = ["benchmark", "trials", "successes", "success_fraction", "mean_v_star", "mean_true_gap"]


def _stages(records):
    stages = {}
    for record in records:
        stages.setdefault(record["stage"], []).append(record)
    return stages


def _fig2(report, out_dir):
    stages = _stages(report.records) or {"": []}
    paths = []
    for stage, records in stages.items():
        stem = "fig2" if len(stages) == 1 else f"fig2_c{records[0]['confidence']:g}"
        running, successes = [], 0
        for count, record in enumerate(records, start=1):
            successes += bool(record["covered"])
            running.append({"trial": record["trial"], "success_fraction": successes / count})
        paths.append(write_records(records, BOUND_COLUMNS, out_dir / f"{stem}_bounds.csv"))
        paths.append(write_records(running, RUNNING_COLUMNS, out_dir / f"{stem}_running.csv"))
    return paths


def _fig4(report, out_dir):
    epsilon = report.config.get("epsilon") or DEFAULT_EPSILON
    bins = report.config.get("histogram_bins", 30)
    histogram, markers = [], []
    by_n_p = {}
    for record in report.records:
        by_n_p.setdefault(record["n_p"], {"gap": [], "validate": []})[record["stream"]].append(record["gamma"])
    for n_p, streams in by_n_p.items():
        fresh = np.asarray(streams["validate"], dtype=float)
        if fresh.size:
            counts, edges = np.histogram(fresh, bins=bins)
            histogram.extend(
                {"n_p": n_p, "bin_left": float(left), "bin_right": float(right), "count": int(count)}
                for left, right, count in zip(edges[:-1], edges[1:], counts)
            )
        if streams["gap"]:
            markers.append(
                {
                    "n_p": n_p,
                    "gamma_star": max(streams["gap"]),
                    "quantile": float(np.quantile(fresh, 1.0 - epsilon)) if fresh.size else "",
                }
            )
    return [
        write_records(histogram, HISTOGRAM_COLUMNS, out_dir / "fig4_histogram.csv"),
        write_records(markers, MARKER_COLUMNS, out_dir / "fig4_markers.csv"),
    ]


def _table1(report, out_dir):
    rows = []
    by_benchmark = {}
    for record in report.records:
        by_benchmark.setdefault(record["benchmark"], []).append(record)
    for name, records in by_benchmark.items():
        successes = sum(bool(record["covered"]) for record in records)
        rows.append(
            {
                "benchmark": name,
                "trials": len(records),
                "successes": successes,
                "success_fraction": successes / len(records),
                "mean_v_star": float(np.mean([record["v_star"] for record in records])),
                "mean_true_gap": float(np.mean([record["true_gap"] for record in records])),
            }
        )
    return [write_records(rows, TABLE1_COLUMNS, out_dir / "table1.csv")]


_WRITERS = {"fig2": _fig2, "fig4": _fig4, "table1": _table1}


def emit_plot_data(report, kind, out_dir):
    """Write the plot CSVs of ``kind`` for ``report``; returns their paths.

    An empty report yields header-only files.
    """
    if kind not in _WRITERS:
        raise DomainError(f"unknown plot kind {kind!r}; choose from {sorted(_WRITERS)}")
    if report.experiment not in PLOT_EXPERIMENTS[kind]:
        raise DomainError(f"plot kind {kind!r} needs a {' or '.join(PLOT_EXPERIMENTS[kind])} report, got {report.experiment!r}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return _WRITERS[kind](report, out_dir)
