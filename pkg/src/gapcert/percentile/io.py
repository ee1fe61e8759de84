import csv
import json
from pathlib import Path

import numpy as np

from gapcert.percentile.problem import InfoSet

INFO_SET_HEADER = ["index", "cost", "decision"]


def manifest_path(path):
    path = Path(path)
    return path.with_name(path.stem + ".manifest.json")


def write_info_set(info, path, space=None):
    """Write ``index,cost,decision`` rows plus a sidecar JSON manifest."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    integral = np.issubdtype(info.decisions.dtype, np.integer)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(INFO_SET_HEADER)
        for index in range(info.n_p):
            decision = info.decisions[index]
            values = [int(v) for v in decision] if integral else [float(v) for v in decision]
            writer.writerow([index, repr(float(info.costs[index])), json.dumps(values)])
    manifest = {"seed": info.seed, "n_p": info.n_p, "problem": info.problem_name, "integral": bool(integral)}
    if space is not None:
        manifest["space"] = space.describe()
    manifest_path(path).write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    return path


def read_info_set(path, problem=None):
    path = Path(path)
    manifest = json.loads(manifest_path(path).read_text(encoding="utf-8"))
    decisions = []
    costs = []
    with path.open(newline="", encoding="utf-8") as handle:
        for row in csv.DictReader(handle):
            costs.append(float(row["cost"]))
            decisions.append(json.loads(row["decision"]))
    dtype = np.intp if manifest.get("integral") else float
    return InfoSet(
        decisions=np.array(decisions, dtype=dtype),
        costs=np.array(costs, dtype=float),
        seed=int(manifest["seed"]),
        problem_name=manifest.get("problem", ""),
        problem=problem,
    )
