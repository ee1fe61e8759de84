from gapcert.percentile.calculus import confidence_of, min_samples
from gapcert.percentile.problem import ConfidenceSpec, InfoSet, PercentileSolution, Problem, SampledPoint
from gapcert.percentile.seeding import derive_seed
from gapcert.percentile.solver import enumerate_costs, estimate_better_fraction, percentile_solve, solve_by_enumeration
from gapcert.percentile.spaces import AnnulusSpace, BoxSpace, DecisionSpace, PermutationSpace
