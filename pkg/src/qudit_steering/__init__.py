"""Steering detection and correlations for a single spin-3/2 qudit."""

from .coarse import (
    CoarsePair,
    JointCoinDistribution,
    OutcomeDistribution,
    coarse_correlation,
    coarse_covariance,
    coin_correlation,
    coin_correlation_raw,
    coin_marginals,
    qudit_coarse,
)
from .correlation import (
    BlochVector,
    CorrelationTensor,
    InconsistencyError,
    MaxCorrelation,
    correlation_tensor,
    correlation_value,
    grid_max_oracle,
    max_correlation,
    xstate_zero_pattern,
)
from .state import (
    DensityMatrix,
    IndexConvention,
    InvalidInputError,
    ParseError,
    ValidationReport,
    hermitian_eigenvalues,
    index_label,
    label_index,
    load_density,
    partial_transpose,
    save_density,
    validate_density,
)
from .steering import (
    BracketError,
    Classification,
    Family,
    SteeringFunctional,
    SteeringReport,
    SweepRecord,
    boundary_bisection,
    steering_check,
    steering_rhs,
    sweep_gisin,
    sweep_werner,
)
from .xstates import (
    DomainError,
    XState,
    gisin,
    gisin_x_max,
    werner,
    xstate_entangled,
    xstate_psd,
    xstate_to_density,
)

__version__ = "0.1.0"
