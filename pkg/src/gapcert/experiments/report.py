import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

from gapcert import __version__
from gapcert.experiments.trials import plain


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    threshold: float

    @property
    def passed(self):
        return self.value >= self.threshold

    def to_dict(self):
        return {"name": self.name, "value": self.value, "threshold": self.threshold, "passed": self.passed}


@dataclass
class RunReport:
    """Everything a run produced. ``config`` plus the library version fully
    determine ``records`` and ``summary``; ``timings`` are wall-clock only."""

    experiment: str
    config: dict
    version: str = __version__
    records: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    timings: list = field(default_factory=list, repr=False)

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    def stage(self, name):
        return [record for record in self.records if record.get("stage") == name]

    def to_dict(self):
        return {
            "experiment": self.experiment,
            "version": self.version,
            "config": self.config,
            "summary": self.summary,
            "checks": [check.to_dict() for check in self.checks],
            "records": len(self.records),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, default=plain)


def write_report(report, out_dir):
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "report.json"
    path.write_text(report.to_json() + "\n", encoding="utf-8")
    with (out_dir / "timings.csv").open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["stage", "index", "seconds"])
        for stage, index, seconds in report.timings:
            writer.writerow([stage, index, f"{seconds:.6f}"])
    return path


def write_records(records, columns, path):
    """CSV of ``columns`` taken from each record, header only when empty."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(columns)
        for record in records:
            writer.writerow([_cell(record[column]) for column in columns])
    return path


def _cell(value):
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, bool):
        return int(value)
    return value
