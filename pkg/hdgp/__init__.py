"""Hyperbolic distance geometry: completion, embedding and benchmarks."""

from .config import (
    EMBEDDING_MODELS,
    MAX_DISTANCE,
    OBJECTIVES,
    validate_config,
)
from .conic_solver import (
    OrdinalConstraint,
    SolverConfig,
    SolverReport,
    SplitSdpProblem,
    audit_split,
    fidelity_budget,
    logdet_reweight,
    projection_reweight,
    psd_project,
    solve_psd_least_squares,
    solve_split_sdp,
)
from .embedding import (
    EmbeddingResult,
    SdrOptions,
    embed_points,
    hdgp,
    low_rank_lorentz_approx,
    project_to_loid,
    sdr_complete,
    spectral_factor,
)
from .errors import (
    HdgpError,
    InputError,
    ManifoldError,
    NoDataError,
    NotLorentzianError,
    SolverError,
)
from .gramian import (
    GramCertificate,
    HGramianSplit,
    Hdm,
    ObservationMask,
    certify_h_gramian,
    gramian_from_hdm,
    h_gramian,
    hdm_from_gramian,
    hdm_of_points,
    relative_error,
)
from .lorentz import (
    LoidPoint,
    MinkowskiForm,
    PoincarePoint,
    from_poincare,
    h_adjoint,
    is_h_unitary,
    loid_distance,
    lorentz_inner,
    poincare_distance,
    random_loid_points,
    to_poincare,
)

__version__ = "1.1.0"

__all__ = [
    # Configuration
    "EMBEDDING_MODELS",
    "OBJECTIVES",
    "MAX_DISTANCE",
    "validate_config",
    # Errors
    "HdgpError",
    "InputError",
    "ManifoldError",
    "NoDataError",
    "NotLorentzianError",
    "SolverError",
    # Geometry
    "LoidPoint",
    "PoincarePoint",
    "MinkowskiForm",
    "lorentz_inner",
    "loid_distance",
    "poincare_distance",
    "to_poincare",
    "from_poincare",
    "h_adjoint",
    "is_h_unitary",
    "random_loid_points",
    # Gramians
    "Hdm",
    "ObservationMask",
    "HGramianSplit",
    "GramCertificate",
    "h_gramian",
    "hdm_from_gramian",
    "gramian_from_hdm",
    "hdm_of_points",
    "relative_error",
    "certify_h_gramian",
    # Solvers
    "OrdinalConstraint",
    "SplitSdpProblem",
    "SolverConfig",
    "SolverReport",
    "psd_project",
    "fidelity_budget",
    "solve_split_sdp",
    "logdet_reweight",
    "projection_reweight",
    "audit_split",
    "solve_psd_least_squares",
    # Embedding
    "SdrOptions",
    "EmbeddingResult",
    "sdr_complete",
    "low_rank_lorentz_approx",
    "spectral_factor",
    "project_to_loid",
    "embed_points",
    "hdgp",
]

# Validate configuration on module import
try:
    validation_result = validate_config()
    if not validation_result["valid"]:
        import warnings

        warnings.warn(f"Configuration validation failed: {validation_result['errors']}")
    if validation_result["warnings"]:
        import warnings

        for warning in validation_result["warnings"]:
            warnings.warn(f"Configuration warning: {warning}")
except Exception as e:
    import warnings

    warnings.warn(f"Configuration validation error: {str(e)}")
