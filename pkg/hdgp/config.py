"""
Configuration constants for the hdgp toolkit.

This module contains numerical tolerances, solver defaults, experiment
defaults and file-format descriptions. Visual chart tokens live in
charts/tokens.py.
"""

# ==============================================================================
# MODELS AND OBJECTIVES
# ==============================================================================

EMBEDDING_MODELS = {
    "LOID": "loid",
    "POINCARE": "poincare",
}

OBJECTIVES = {
    "TRACE": "trace",
    "LOGDET": "logdet",
    "PROJECTION": "projection",
}

GEOMETRIES = {
    "HYPERBOLIC": "hyperbolic",
    "EUCLIDEAN": "euclidean",
}

# ==============================================================================
# NUMERICAL TOLERANCES
# ==============================================================================

TOL_NORM = 1e-9  # |<x,x> + 1| for points on the 'Loid (relative to x0^2)
TOL_CLAMP = 1e-9  # acosh argument may dip this far below 1
TOL_PSD = 1e-8
TOL_SYMMETRY = 1e-9
H_UNITARY_TOL = 1e-10
CERTIFICATE_TOL = 1e-7
POINCARE_NORM_CAP = 1.0 - 1e-12

# Solver output is only feasible up to its residuals
SOLVED_GRAMIAN_CLAMP_TOL = 1e-4

# Projection onto the 'Loid
PROJECTION_XTOL = 1e-12
PROJECTION_MAXITER = 200

# ==============================================================================
# SOLVER DEFAULTS
# ==============================================================================

MAX_ITERS = 20000
RHO = 1.0
RHO_ADAPT_RATIO = 10.0
RHO_ADAPT_FACTOR = 2.0
RHO_ADAPT_INTERVAL = 25
TOL_PRIMAL = 1e-6
TOL_DUAL = 1e-6
RELAXATION = 1.6  # over-relaxation of the splitting updates, in (0, 2)
SNAP_FACTOR = 10.0  # solved splits drop eigenvalues below SNAP_FACTOR * TOL_PRIMAL (relative)

LOGDET_ROUNDS = 0
LOGDET_DELTA0 = 1e-2
# Reweighting rounds of the relaxation options, per objective (projection rounds stop early)
REWEIGHT_ROUNDS = {
    "logdet": 3,
    "projection": 20,
}
RANK_TAIL_TOL = 1e-5  # projection reweighting stops once the trace outside rank d is this small

DEFAULT_EPS2 = 1e-2  # ordinal margin
EPS1_FACTOR = 1e-10  # fidelity budget relative to ||W o cosh D||_F^2
DEFAULT_NOISE_SCALE = 1.0

MAX_DISTANCE = 20.0  # cosh(20) ~ 2.4e8

# ==============================================================================
# EXPERIMENT DEFAULTS
# ==============================================================================

DEFAULT_TRIALS = 20
DEFAULT_SPREAD = 1.0
SUCCESS_DELTA = 1e-2
D0_DELTA = 1e-3
PLATEAU_TOL = 1e-9  # relative to ||D_{N-1}||_F
RANK_FLOOR = 1e-5  # eigenvalues below this share of the spectral norm count as zero
TREE_MAX_DEGREE = 3
TREE_LOGDET_ROUNDS = 3
TREE_EPS1_FACTOR = 1e-4  # tree metrics leave the log-det objective room to lower the rank
ORDINAL_MIN_DISTANCE = 1.0
ORDINAL_TRUE_DIM = 2

# Desk-scale limits for the synthetic benchmarks
SPARSITY_MAX_NODES = 30
TREE_MAX_NODES = 25

# ==============================================================================
# FILE FORMATS
# ==============================================================================

DISTANCE_FILE_CONFIG = {
    "name": "distances",
    "required_columns": ["i", "j", "value"],
    "integer_columns": ["i", "j"],
    "numeric_columns": ["value"],
}

EMBEDDING_FILE_CONFIG = {
    "name": "embedding",
    "required_keys": ["model", "dim", "n", "points"],
}

ORDINAL_FILE_CONFIG = {
    "name": "ordinal",
    "record_length": 4,
}

POINTS_FILE_CONFIG = {
    "name": "points",
    "required_keys": ["points"],
}

# Keys accepted by --config; values are the accepted JSON types
RUN_CONFIG_KEYS = {
    "objective": (str,),
    "eps1": (int, float),
    "eps2": (int, float),
    "noise_scale": (int, float),
    "min_distance": (int, float),
    "max_violations_pct": (int, float),
    "logdet_rounds": (int,),
    "max_iters": (int,),
    "rho": (int, float),
    "relaxation": (int, float),
    "tol_primal": (int, float),
    "tol_dual": (int, float),
    "seed": (int,),
}

CSV_FLOAT_FORMAT = "%.17g"
COMMENT_PREFIX = "# "

# ==============================================================================
# RENDERING
# ==============================================================================

SVG_VIEWPORT = 1000
SVG_POINT_RADIUS = 4
SVG_LABEL_OFFSET = 6


def validate_config():
    """
    Validate configuration constants to ensure they are properly defined and have valid values.

    Returns:
        dict: Validation results with 'valid' boolean, 'errors' and 'warnings' lists
    """
    errors = []
    warnings = []

    for name, table in [
        ("EMBEDDING_MODELS", EMBEDDING_MODELS),
        ("OBJECTIVES", OBJECTIVES),
        ("GEOMETRIES", GEOMETRIES),
    ]:
        if not isinstance(table, dict) or not table:
            errors.append(f"{name} must be a non-empty dictionary")
            continue
        for key, value in table.items():
            if not isinstance(value, str) or not value.strip():
                errors.append(f"{name}['{key}'] must be a non-empty string")

    # Tolerances
    for name, value in [
        ("TOL_NORM", TOL_NORM),
        ("TOL_CLAMP", TOL_CLAMP),
        ("TOL_PSD", TOL_PSD),
        ("TOL_SYMMETRY", TOL_SYMMETRY),
        ("H_UNITARY_TOL", H_UNITARY_TOL),
        ("CERTIFICATE_TOL", CERTIFICATE_TOL),
        ("SOLVED_GRAMIAN_CLAMP_TOL", SOLVED_GRAMIAN_CLAMP_TOL),
        ("PROJECTION_XTOL", PROJECTION_XTOL),
        ("TOL_PRIMAL", TOL_PRIMAL),
        ("TOL_DUAL", TOL_DUAL),
    ]:
        if not isinstance(value, float) or not 0 < value < 1:
            errors.append(f"{name} must be a float in (0, 1)")

    if not 0 < POINCARE_NORM_CAP < 1:
        errors.append("POINCARE_NORM_CAP must lie in (0, 1)")

    # Solver
    for name, value in [
        ("MAX_ITERS", MAX_ITERS),
        ("PROJECTION_MAXITER", PROJECTION_MAXITER),
        ("RHO_ADAPT_INTERVAL", RHO_ADAPT_INTERVAL),
        ("DEFAULT_TRIALS", DEFAULT_TRIALS),
        ("TREE_MAX_DEGREE", TREE_MAX_DEGREE),
    ]:
        if not isinstance(value, int) or value <= 0:
            errors.append(f"{name} must be a positive integer")

    for key, value in REWEIGHT_ROUNDS.items():
        if key not in OBJECTIVES.values():
            errors.append(f"REWEIGHT_ROUNDS key '{key}' is not an objective")
        if not isinstance(value, int) or value <= 0:
            errors.append(f"REWEIGHT_ROUNDS['{key}'] must be a positive integer")

    if not isinstance(LOGDET_ROUNDS, int) or LOGDET_ROUNDS < 0:
        errors.append("LOGDET_ROUNDS must be a non-negative integer")

    if RHO <= 0:
        errors.append("RHO must be positive")
    if RHO_ADAPT_RATIO <= 1 or RHO_ADAPT_FACTOR <= 1:
        errors.append("RHO_ADAPT_RATIO and RHO_ADAPT_FACTOR must exceed 1")

    for name, value in [
        ("LOGDET_DELTA0", LOGDET_DELTA0),
        ("DEFAULT_EPS2", DEFAULT_EPS2),
        ("EPS1_FACTOR", EPS1_FACTOR),
        ("DEFAULT_NOISE_SCALE", DEFAULT_NOISE_SCALE),
        ("MAX_DISTANCE", MAX_DISTANCE),
        ("DEFAULT_SPREAD", DEFAULT_SPREAD),
        ("ORDINAL_MIN_DISTANCE", ORDINAL_MIN_DISTANCE),
        ("SNAP_FACTOR", SNAP_FACTOR),
        ("TREE_EPS1_FACTOR", TREE_EPS1_FACTOR),
    ]:
        if not isinstance(value, (int, float)) or value <= 0:
            errors.append(f"{name} must be a positive number")

    if not 0 < SUCCESS_DELTA < 1 or not 0 < D0_DELTA < 1:
        errors.append("SUCCESS_DELTA and D0_DELTA must lie in (0, 1)")

    if not 0 < RELAXATION < 2:
        errors.append("RELAXATION must lie in (0, 2)")

    for name, value in [("RANK_TAIL_TOL", RANK_TAIL_TOL), ("RANK_FLOOR", RANK_FLOOR)]:
        if not 0 < value < 1:
            errors.append(f"{name} must lie in (0, 1)")

    if TREE_EPS1_FACTOR < EPS1_FACTOR:
        warnings.append("TREE_EPS1_FACTOR is tighter than EPS1_FACTOR")

    if MAX_DISTANCE > 30:
        warnings.append(
            f"MAX_DISTANCE {MAX_DISTANCE} lets cosh overflow double precision budgets"
        )

    # File formats
    for col in DISTANCE_FILE_CONFIG["integer_columns"] + DISTANCE_FILE_CONFIG[
        "numeric_columns"
    ]:
        if col not in DISTANCE_FILE_CONFIG["required_columns"]:
            errors.append(f"DISTANCE_FILE_CONFIG column '{col}' is not required")

    try:
        CSV_FLOAT_FORMAT % 1.5
    except (ValueError, TypeError):
        errors.append(f"CSV_FLOAT_FORMAT '{CSV_FLOAT_FORMAT}' is not a valid format")

    if not isinstance(SVG_VIEWPORT, int) or SVG_VIEWPORT <= 0:
        errors.append("SVG_VIEWPORT must be a positive integer")

    return {"valid": len(errors) == 0, "errors": errors, "warnings": warnings}
