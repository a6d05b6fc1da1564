"""Opinion dynamics on two-layer multiplex networks.

Agents average their neighbors' opinions layer by layer: the first layer is
consulted at every step, the second only periodically.  The package builds
the induced row-stochastic updates, classifies the two-step influence chain,
predicts the profile every run settles on, and calibrates a geometric
envelope for how fast it gets there.
"""

from .analysis import (
    AnalysisReport,
    CanonicalForm,
    FixedPointPrediction,
    analyze,
    canonical_form,
    chain_classes,
    contraction_factor,
    limit_matrix,
    predicted_fixed_point,
    two_step_matrix,
)
from .dynamics import (
    BoundParameters,
    Calibration,
    Trajectory,
    best_response,
    bound_series,
    bound_value,
    calibrate_u,
    cost,
    simulate,
    step,
    with_bound,
)
from .errors import (
    AssumptionViolatedError,
    CalibrationError,
    MuxdynError,
    NetworkFormatError,
    NumericalInconsistencyError,
    StructuralError,
    UnsupportedConfigurationError,
)
from .fixtures import fixture_path
from .matrices import (
    Distribution,
    StochasticMatrix,
    induced_norm,
    layer_adjacency,
    multiplex_adjacency,
    spectral_radius,
    stationary_distribution,
    vector_norm,
)
from .netfile import load_network, parse_network, save_network
from .network import (
    Agent,
    CommClass,
    Layer,
    MultiplexNetwork,
    ValidationReport,
    Violation,
    leaders,
    neighbor_set,
    strongly_connected_components,
    symmetrize,
    validate_assumptions,
)

__version__ = "0.1.0"

__all__ = [
    "Agent",
    "AnalysisReport",
    "AssumptionViolatedError",
    "BoundParameters",
    "Calibration",
    "CalibrationError",
    "CanonicalForm",
    "CommClass",
    "Distribution",
    "FixedPointPrediction",
    "Layer",
    "MultiplexNetwork",
    "MuxdynError",
    "NetworkFormatError",
    "NumericalInconsistencyError",
    "StochasticMatrix",
    "StructuralError",
    "Trajectory",
    "UnsupportedConfigurationError",
    "ValidationReport",
    "Violation",
    "analyze",
    "best_response",
    "bound_series",
    "bound_value",
    "calibrate_u",
    "canonical_form",
    "chain_classes",
    "contraction_factor",
    "cost",
    "fixture_path",
    "induced_norm",
    "layer_adjacency",
    "leaders",
    "limit_matrix",
    "load_network",
    "multiplex_adjacency",
    "neighbor_set",
    "parse_network",
    "predicted_fixed_point",
    "save_network",
    "simulate",
    "spectral_radius",
    "stationary_distribution",
    "step",
    "strongly_connected_components",
    "symmetrize",
    "two_step_matrix",
    "validate_assumptions",
    "vector_norm",
    "with_bound",
    "__version__",
]
