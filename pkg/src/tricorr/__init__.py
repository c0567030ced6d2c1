"""tricorr: correlation structure of a tritter-generated three-mode
Gaussian state under loss.

A two-mode squeezed vacuum and a coherent state are mixed on a balanced
three-port splitter; the package builds the output covariance matrix,
pushes it through per-mode pure-loss channels, and quantifies
entanglement (logarithmic negativity) and Gaussian EPR steering across
every bipartition, with closed-form cross-checks, threshold finding, and
loss-region classification.
"""

from .analysis import (
    RegionLabel,
    SweepResult,
    SweepSpec,
    ThresholdResult,
    classify_region,
    classify_region_from_cm,
    evaluate_report,
    find_threshold,
    lossy_cm,
    measure_value,
    run_sweep,
    scenario_ranking,
)
from .errors import (
    DimensionError,
    DomainError,
    NumericError,
    SingularBlockError,
    TricorrError,
    UnsupportedFormulaError,
    ValidationError,
)
from .loss import SCENARIO_DESCRIPTIONS, LossConfig, Scenario, apply_loss, scenario_config
from .measures import (
    CorrelationReport,
    FormulaValue,
    MeasureId,
    default_measures,
    formula_status,
    gaussian_steering,
    log_negativity,
    monogamy_residuals,
    parse_measure_id,
    printed_formula,
    reference_formula,
)
from .symplectic import (
    ModePartition,
    is_physical,
    partial_transpose,
    reduced_cm,
    schur_complement,
    symplectic_eigenvalues,
    symplectic_form,
)
from .tritter import (
    InputSpec,
    golden_cm_elements,
    first_moments,
    ideal_output_cm,
    input_cm,
    output_cm_via_transform,
    tritter_unitary,
    unitary_to_symplectic,
)
from .verify import CheckResult, run_all

__version__ = "0.1.0"

__all__ = [
    "CheckResult",
    "CorrelationReport",
    "DimensionError",
    "DomainError",
    "FormulaValue",
    "InputSpec",
    "LossConfig",
    "MeasureId",
    "ModePartition",
    "NumericError",
    "RegionLabel",
    "SCENARIO_DESCRIPTIONS",
    "Scenario",
    "SingularBlockError",
    "SweepResult",
    "SweepSpec",
    "ThresholdResult",
    "TricorrError",
    "UnsupportedFormulaError",
    "ValidationError",
    "golden_cm_elements",
    "apply_loss",
    "classify_region",
    "classify_region_from_cm",
    "default_measures",
    "evaluate_report",
    "find_threshold",
    "first_moments",
    "formula_status",
    "gaussian_steering",
    "ideal_output_cm",
    "input_cm",
    "is_physical",
    "log_negativity",
    "lossy_cm",
    "measure_value",
    "monogamy_residuals",
    "output_cm_via_transform",
    "parse_measure_id",
    "partial_transpose",
    "printed_formula",
    "reduced_cm",
    "reference_formula",
    "run_all",
    "run_sweep",
    "scenario_config",
    "scenario_ranking",
    "schur_complement",
    "symplectic_eigenvalues",
    "symplectic_form",
    "tritter_unitary",
    "unitary_to_symplectic",
]
