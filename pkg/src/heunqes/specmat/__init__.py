"""Invariant-subspace matrices, their eigenpairs and quasi-polynomial solutions."""
from .builder import (ClosureError, InvariantMatrix, QuasiPolynomial,
                      build_invariant_matrix)
from .eigen import EigenPair, NumericalFailure, eigen_tridiagonal
from .published import DISCREPANCIES, published_matrix
from .solutions import quasi_polynomials

__all__ = [
    "ClosureError",
    "InvariantMatrix",
    "QuasiPolynomial",
    "build_invariant_matrix",
    "EigenPair",
    "NumericalFailure",
    "eigen_tridiagonal",
    "DISCREPANCIES",
    "published_matrix",
    "quasi_polynomials",
]
