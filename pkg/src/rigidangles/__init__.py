"""Angles, polarization and conformality of finite-dimensional inner products."""

__version__ = "0.1.0"

from .core import (
    DEFAULT_TOL,
    AngleKind,
    AngleValue,
    GramForm,
    ScalarField,
    Tolerances,
    angle,
    cauchy_schwarz_gap,
    inner,
    norm,
    norm_oracle,
    polarize,
    reconstruct_gram,
    standard_form,
    validate_gram,
)
from .rigidity import (
    ConformalityVerdict,
    EquivalenceReport,
    FourVectorFrame,
    WitnessKind,
    WitnessPair,
    best_factor,
    check_conformal,
    equivalence_suite,
    find_orthogonality_witness,
    four_vector_frame,
    frame_residuals,
    projection_residual,
    same_fixed_angle,
    witness_is_valid,
)
from .metricfield import (
    ConformalFactorField,
    FieldVerdict,
    MetricFieldSample,
    pointwise_conformality,
    sample_from_arrays,
    theta0_field_check,
)
