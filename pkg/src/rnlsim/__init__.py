"""Two-photon successive-impact interferometry.

Quantum-mechanical and relativistic-nonlocality (multisimultaneity)
predictions for a pair of momentum-correlated photons, one crossing a single
beam splitter and the other two in series, with a deterministic Monte Carlo
harness for coincidence counting.
"""

from .config import RunConfig, build_run_config, parse_config_file, parse_variants
from .errors import AmbiguousScheduleError, ConfigError, TopologyError
from .montecarlo import (
    CoincidenceCounts,
    EstimatorResult,
    estimate_correlation,
    run_experiment,
    sample_counts,
    sample_outcome,
    substream,
)
from .quantum import (
    OUTCOMES,
    InterferometerTopology,
    JointDistribution,
    PhaseSettings,
    amplitude_oracle,
    calibrated_topology,
    qm_correlation,
    qm_distinguishable_joint,
    qm_joint,
    qm_joint_probability,
    qm_single_pair_correlation,
    qm_single_pair_joint,
    symmetric_splitter,
)
from .report import (
    ComparisonReport,
    VariantRow,
    Verdict,
    compare_report,
    render_csv,
    render_json_lines,
    render_table,
)
from .rnl import (
    ConditionalTable,
    ModelVariant,
    Prediction,
    conditional_from_before,
    predict,
    rnl_joint,
    two_nonbefore_correlation,
)
from .timing import (
    SPEED_OF_LIGHT,
    ExperimentGeometry,
    ImpactSchedule,
    PhotonOneLabel,
    PhotonTwoLabel,
    Site,
    SpacetimeEvent,
    TimingAssignment,
    boost_time,
    classify,
    schedule_from_geometry,
    series_preset,
)

__all__ = [
    "AmbiguousScheduleError",
    "CoincidenceCounts",
    "ComparisonReport",
    "ConditionalTable",
    "ConfigError",
    "EstimatorResult",
    "ExperimentGeometry",
    "ImpactSchedule",
    "InterferometerTopology",
    "JointDistribution",
    "ModelVariant",
    "OUTCOMES",
    "PhaseSettings",
    "PhotonOneLabel",
    "PhotonTwoLabel",
    "Prediction",
    "RunConfig",
    "SPEED_OF_LIGHT",
    "Site",
    "SpacetimeEvent",
    "TimingAssignment",
    "TopologyError",
    "VariantRow",
    "Verdict",
    "amplitude_oracle",
    "boost_time",
    "build_run_config",
    "calibrated_topology",
    "classify",
    "compare_report",
    "conditional_from_before",
    "estimate_correlation",
    "parse_config_file",
    "parse_variants",
    "predict",
    "qm_correlation",
    "qm_distinguishable_joint",
    "qm_joint",
    "qm_joint_probability",
    "qm_single_pair_correlation",
    "qm_single_pair_joint",
    "render_csv",
    "render_json_lines",
    "render_table",
    "rnl_joint",
    "run_experiment",
    "sample_counts",
    "sample_outcome",
    "schedule_from_geometry",
    "series_preset",
    "substream",
    "symmetric_splitter",
    "two_nonbefore_correlation",
]
