"""Arithmetic on smooth curves over finite fields via precomputed local expansions.

Main entry points: :func:`gonality.has_function_leq`, :func:`gonality.gonality` (the
submodule keeps its name; the function is not re-exported),
:func:`classgroup.class_group`, :func:`rrspace.rr_dim` and the ``curvearith`` CLI.
"""

from .classgroup import ClassGroupResult, class_group
from .curve import (
    CurveModel,
    Divisor,
    FunctionElement,
    Place,
    differential_basis,
    divisor_of,
    hyperelliptic,
    infinity_rr_basis,
    place_at_point,
    places_up_to,
    plane,
    validate_model,
    zeta_data,
)
from .errors import (
    CurveArithError,
    InternalError,
    InvalidInputError,
    PoleError,
    PrecisionError,
    ResourceLimitError,
    StallError,
    StrategyMismatch,
    TimeoutExceeded,
)
from .expand import ExpansionTable, differential_expansions, function_expansions, oracle_expansion
from .gonality import GonalityResult, has_function_leq
from .rrspace import RRQueryEngine, nullspace_functions, riemann_roch_space, rr_dim

__version__ = "0.1.0"

__all__ = [
    "ClassGroupResult",
    "CurveArithError",
    "CurveModel",
    "Divisor",
    "ExpansionTable",
    "FunctionElement",
    "GonalityResult",
    "InternalError",
    "InvalidInputError",
    "Place",
    "PoleError",
    "PrecisionError",
    "RRQueryEngine",
    "ResourceLimitError",
    "StallError",
    "StrategyMismatch",
    "TimeoutExceeded",
    "__version__",
    "class_group",
    "differential_basis",
    "differential_expansions",
    "divisor_of",
    "function_expansions",
    "has_function_leq",
    "hyperelliptic",
    "infinity_rr_basis",
    "nullspace_functions",
    "oracle_expansion",
    "place_at_point",
    "places_up_to",
    "plane",
    "riemann_roch_space",
    "rr_dim",
    "validate_model",
    "zeta_data",
]
