"""Curve models, function fields, places, divisors and closed-form bases."""

from .bases import (
    DifferentialBasis,
    RiemannRochBasis,
    canonical_divisor,
    differential_basis,
    hyperplane_divisor,
    infinity_rr_basis,
)
from .divisor import (
    Divisor,
    coordinate_ratio,
    divisor_of,
    place_at_point,
    place_by_label,
    projective_coordinates,
    support_localization,
)
from .function import FunctionElement
from .model import CurveModel, curve_hash, hyperelliptic, plane, validate_model
from .places import INFINITY, Place, evaluate_at, places_over, places_up_to, uniformizer_at, valuation_at
from .zeta import class_number_exact, count_points, l_polynomial, zeta_data

__all__ = [
    "INFINITY",
    "CurveModel",
    "DifferentialBasis",
    "Divisor",
    "FunctionElement",
    "Place",
    "RiemannRochBasis",
    "canonical_divisor",
    "class_number_exact",
    "coordinate_ratio",
    "count_points",
    "curve_hash",
    "differential_basis",
    "divisor_of",
    "evaluate_at",
    "hyperelliptic",
    "hyperplane_divisor",
    "infinity_rr_basis",
    "l_polynomial",
    "place_at_point",
    "place_by_label",
    "places_over",
    "places_up_to",
    "plane",
    "projective_coordinates",
    "support_localization",
    "uniformizer_at",
    "valuation_at",
    "validate_model",
    "zeta_data",
]
