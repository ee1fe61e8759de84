from gapcert.experiments.plots import emit_plot_data
from gapcert.experiments.report import Check, RunReport
from gapcert.experiments.runner import run
