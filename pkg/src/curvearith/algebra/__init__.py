"""Finite fields, polynomials, factorization and linear algebra over finite fields."""

from .factor import factor_poly, irreducibles_up_to, is_irreducible, roots
from .fields import FiniteField, gf, prime_field
from .linalg import FieldMatrix, IncrementalEchelon, rank, rank_and_left_nullspace
from .poly import Poly
from .residue import ResidueField, make_residue_field

__all__ = [
    "FieldMatrix",
    "FiniteField",
    "IncrementalEchelon",
    "Poly",
    "ResidueField",
    "factor_poly",
    "gf",
    "irreducibles_up_to",
    "is_irreducible",
    "make_residue_field",
    "prime_field",
    "rank",
    "rank_and_left_nullspace",
    "roots",
]
