import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from gapcert.experiments.pipelines import PIPELINES
from gapcert.experiments.plots import PLOT_KINDS, emit_plot_data
from gapcert.experiments.report import RunReport, write_report
from gapcert.experiments.trials import RunContext

logger = logging.getLogger(__name__)


def run(config, out_dir=None):
    """Execute the pipeline ``config.experiment`` names and write its
    artefacts (CSV, JSON, plot data) under ``out_dir`` or ``config.out``.

    Identical configs reproduce identical numeric outputs; a rerun into the
    same directory reuses completed trials.
    """
    out_dir = Path(out_dir or config.out)
    logger.info("running %s (seed %d) into %s", config.experiment, config.seed, out_dir)
    executor = ProcessPoolExecutor(max_workers=config.workers) if config.workers > 1 else None
    try:
        with RunContext(config, out_dir, executor) as ctx:
            records, summary, checks = PIPELINES[config.experiment](config, ctx)
            timings = list(ctx.timings)
    finally:
        if executor is not None:
            executor.shutdown()
    report = RunReport(
        experiment=config.experiment,
        config=config.model_dump(mode="json", exclude={"workers", "out"}),
        records=records,
        summary=summary,
        checks=checks,
        timings=timings,
    )
    kind = PLOT_KINDS.get(config.experiment)
    if kind is not None:
        emit_plot_data(report, kind, out_dir)
    write_report(report, out_dir)
    for check in checks:
        level = logging.INFO if check.passed else logging.WARNING
        logger.log(level, "%s: %.6g (threshold %.6g)", check.name, check.value, check.threshold)
    return report
