"""Quasi-polynomial solutions from the invariant-subspace eigenproblem."""
from __future__ import annotations

from typing import List

import numpy as np

from ..canonical import GenericCoefficients
from ..tolerances import DEFAULT, Tolerances
from .builder import QuasiPolynomial, build_invariant_matrix, leading_normalized
from .eigen import eigen_tridiagonal

__all__ = ["quasi_polynomials", "verify"]

#: relative size below which a leading coefficient counts as zero
_LEAD_REL = 1e-10


def verify(c: GenericCoefficients, qp: QuasiPolynomial, extra: int = 20,
           tol: Tolerances = DEFAULT) -> QuasiPolynomial:
    """Attach residual and truncation metrics and the verified flag."""
    from .. import frobenius as fb

    res = fb.residual_max(c, qp)
    try:
        trunc = fb.verify_truncation(c, qp, extra, tol).max_relative
    except (fb.ResonanceError, ValueError):
        trunc = float("inf")
    ok = bool(res <= tol.residual and trunc <= tol.truncation)
    return QuasiPolynomial(qp.tau2, qp.coeffs, qp.eigen, res, trunc, ok)


def quasi_polynomials(c: GenericCoefficients, inst, tol: Tolerances = DEFAULT,
                      seed: int = 0, extra: int = 20) -> List[QuasiPolynomial]:
    """All ``N + 1`` solutions ``z^(2 tau) P_N(z)`` of a QES instance.

    Each eigenvalue ``lambda`` of the invariant matrix is a value of
    ``-a8`` for which the quasi-polynomial solves the equation.  Solutions
    failing either check are returned with ``verified=False``.

    Raises
    ------
    NumericalFailure
        Propagated from the eigen-solver.
    """
    M = build_invariant_matrix(c, inst.sigma, inst.tau, inst.N, tol)
    out = []
    for pair in eigen_tridiagonal(M, seed=seed, tol=tol):
        coeffs = leading_normalized(pair.vector, _LEAD_REL)
        qp = QuasiPolynomial(M.powers[0], coeffs, pair.value)
        out.append(verify(c, qp, extra, tol))
    return out
