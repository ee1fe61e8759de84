from gapcert.certifiers.gap import (
    EXACT,
    GapCertificate,
    LevelSetReport,
    MonteCarlo,
    certify_gap,
    estimate_gap_probability,
    exact_gap_probability,
    exceedance_probability,
    level_set_report,
    level_set_sweep,
)
from gapcert.certifiers.repetitive import (
    GapSample,
    ProblemFamily,
    RepetitiveCertificate,
    build_certificate,
    coverage_threshold,
    sample_gap,
    validate_coverage,
)
from gapcert.certifiers.variance import VarianceModel, subsample_info, variance_at, variance_many
