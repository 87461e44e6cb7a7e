"""Finite-field hypergeometric functions and point counts on monomial deformations."""

from .counting import DeformationFamily, brute_count, diagonal_count, koblitz_count
from .errors import BudgetError, PreconditionError, RoundingError, VerificationError
from .ffield import FieldElement, FieldSpec, make_field

__all__ = [
    "BudgetError",
    "DeformationFamily",
    "FieldElement",
    "FieldSpec",
    "PreconditionError",
    "RoundingError",
    "VerificationError",
    "brute_count",
    "diagonal_count",
    "koblitz_count",
    "make_field",
]
__version__ = "0.1.0"
