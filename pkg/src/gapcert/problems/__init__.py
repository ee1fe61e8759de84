from gapcert.problems.benchmarks import BENCHMARKS, BenchmarkSpec, benchmark_spec, make_benchmark
from gapcert.problems.synthetic import constant_family, constant_problem, step_problem, uniform_gap_family
from gapcert.problems.tsp import (
    TspInstance,
    TspPath,
    make_tsp_family,
    make_tsp_problem,
    random_tsp_instance,
    read_tsp_instance,
    tsp_cost,
    write_tsp_instance,
)
