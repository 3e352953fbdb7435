"""Cepstrum-based weighted Hardy norms, Dirichlet distances and Kahler geometry of ARMA models."""

from .closed_form import (
    DecompositionReport,
    decompose,
    dirichlet_distance_closed,
    dirichlet_norm_closed,
    hyperbolic_distance,
    xi,
)
from .errors import (
    ArmaGeodesyError,
    InternalInconsistency,
    MethodSchemeMismatch,
    NoConvergence,
    NonPositiveGain,
    ParseError,
    RootOutsideDisk,
    SeriesDidNotConverge,
    SingularMetric,
    StepOutOfDisk,
    UnstablePoint,
    ValidationError,
)
from .geometry import (
    GeometryReport,
    connection_dirichlet_closed,
    connection_fd,
    kahler_potential,
    metric_contour_hardy,
    metric_dirichlet_closed,
    metric_fd,
)
from .io import DistanceMatrixReport, distance_matrix, load_model, save_model
from .model import (
    EPS_STAB,
    IDENTITY,
    ArmaModel,
    cepstrum,
    cepstrum_sequence,
    roots_from_poly,
    spectral_density_at,
    transfer_at,
    validate,
)
from .series import (
    BERGMAN,
    DIRICHLET,
    HARDY,
    SeriesResult,
    WeightScheme,
    truncation_bound,
    weight_at,
    weighted_distance_series,
    weighted_norm_series,
)

__version__ = "0.1.0"
