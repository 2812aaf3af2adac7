"""Eigenpairs of small complex non-symmetric tridiagonal matrices.

Eigenvalues are the roots of ``det(lambda I - T)``, found by Aberth
simultaneous iteration in which ``p/p'`` comes straight from the three-term
determinant recurrence.  Eigenvectors follow by inverse iteration with a
pivoted banded solve.  Everything is accepted only after the eigenpair
residual has been checked, so the root finder's own stopping rule never
decides correctness.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .. import kernels
from ..tolerances import DEFAULT, Tolerances
from .builder import InvariantMatrix

__all__ = ["EigenPair", "NumericalFailure", "eigen_tridiagonal",
           "tridiagonal_eigenvalues"]


class NumericalFailure(RuntimeError):
    """The eigen-solver could not meet its residual contract."""

    def __init__(self, message: str, defect: float):
        super().__init__(f"{message} (defect {defect:.3e})")
        self.defect = defect


@dataclass(frozen=True)
class EigenPair:
    value: complex
    vector: np.ndarray
    residual: float


def _as_bands(M):
    if isinstance(M, InvariantMatrix):
        if not M.is_tridiagonal:
            raise ValueError("eigen solver handles tridiagonal matrices only")
        return M.sub, M.diag, M.sup
    sub, diag, sup = (np.asarray(x, dtype=complex) for x in M)
    return sub, diag, sup


def _start_points(diag, offprod, rng, restart: int) -> np.ndarray:
    n = len(diag)
    center = np.sum(diag) / n
    radius = np.max(np.abs(diag - center))
    if n > 1:
        radius += 2 * np.sqrt(np.max(np.abs(offprod)))
    radius = max(radius, 1.0) * (1 + 0.5 * restart)
    phase = rng.uniform(0, 2 * np.pi)
    ang = phase + 2 * np.pi * np.arange(n) / n
    jitter = 1 + 0.1 * rng.uniform(-1, 1, n) if restart else 1.0
    return center + radius * jitter * np.exp(1j * ang)


def tridiagonal_eigenvalues(sub, diag, sup, seed: int = 0,
                            tol: Tolerances = DEFAULT) -> np.ndarray:
    """Eigenvalues only; see :func:`eigen_tridiagonal` for the full contract."""
    return np.array([p.value for p in eigen_tridiagonal((sub, diag, sup), seed, tol)])


def _residual(sub, diag, sup, lam, v) -> float:
    r = (diag - lam) * v
    r[1:] += sub * v[:-1]
    r[:-1] += sup * v[1:]
    return float(np.max(np.abs(r)))


def _eigvec(sub, diag, sup, lam, scale, rng):
    """Inverse iteration with a tiny complex shift; returns (v, residual)."""
    n = len(diag)
    best_v, best_r = None, np.inf
    b = np.ones(n, dtype=complex) + 0.1 * rng.standard_normal(n)
    for eps in (1e-14, 1e-12, 1e-10):
        shift = lam + eps * scale * (1 + 0.5j)
        v = b
        for _ in range(3):
            try:
                v = kernels.tridiag_solve(sub, diag - shift, sup, v)
            except ZeroDivisionError:
                break
            big = np.max(np.abs(v))
            if not np.isfinite(big) or big == 0:
                break
            v = v / v[int(np.argmax(np.abs(v)))]
            r = _residual(sub, diag, sup, lam, v)
            if r < best_r:
                best_v, best_r = v, r
        if best_r <= 1e-14 * scale:
            break
    return best_v, best_r


def _sort_key(pair: EigenPair):
    lam = pair.value
    vec = tuple(x for z in pair.vector for x in (round(z.real, 9), round(z.imag, 9)))
    return (round(lam.real, 9) + 0.0, round(lam.imag, 9) + 0.0, vec)


def eigen_tridiagonal(M, seed: int = 0, tol: Tolerances = DEFAULT) -> List[EigenPair]:
    """All eigenpairs of a tridiagonal matrix, with multiplicity.

    Parameters
    ----------
    M : InvariantMatrix or (sub, diag, sup)
    seed : int
        Seed of the random phase of the start points and of restarts.
    tol : Tolerances

    Returns
    -------
    list of EigenPair
        Sorted by real part, then imaginary part.  Each vector has unit
        max-norm with its largest entry equal to 1, and
        ``||M v - lambda v||_inf <= tol.eigen_residual * max(1, ||M||_inf)``.

    Raises
    ------
    NumericalFailure
        When no restart produces a full set of eigenpairs meeting the bound.
    """
    sub, diag, sup = _as_bands(M)
    n = len(diag)
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return [EigenPair(complex(diag[0]), np.ones(1, complex), 0.0)]
    rownorm = np.abs(diag).copy()
    rownorm[1:] += np.abs(sub)
    rownorm[:-1] += np.abs(sup)
    scale = max(1.0, float(np.max(rownorm)))
    bound = tol.eigen_residual * scale
    offprod = sub * sup
    trace = np.sum(diag)
    rng = np.random.default_rng(seed)

    worst = np.inf
    for attempt in range(tol.aberth_restarts + 1):
        z0 = _start_points(diag, offprod, rng, attempt)
        lam, _, _ = kernels.aberth(diag, offprod, z0, tol.aberth_maxiter,
                                   tol.aberth_tol)
        if not np.all(np.isfinite(lam)):
            continue
        if abs(np.sum(lam) - trace) > 1e-8 * scale * n:
            worst = min(worst, abs(np.sum(lam) - trace))
            continue
        pairs, defect = [], 0.0
        for value in lam:
            v, r = _eigvec(sub, diag, sup, value, scale, rng)
            if v is None:
                defect = np.inf
                break
            if r > bound:
                # Rayleigh-type correction for clustered or defective roots
                Mv = diag * v
                Mv[1:] += sub * v[:-1]
                Mv[:-1] += sup * v[1:]
                value2 = np.vdot(v, Mv) / np.vdot(v, v)
                r2 = _residual(sub, diag, sup, value2, v)
                if r2 < r:
                    value, r = value2, r2
            defect = max(defect, r)
            pairs.append(EigenPair(complex(value), v, r))
        if defect <= bound:
            return sorted(pairs, key=_sort_key)
        worst = min(worst, defect)
    raise NumericalFailure("tridiagonal eigen-solver did not converge", worst)


def eigenvalues_sorted(values: Sequence[complex]) -> np.ndarray:
    """Sort eigenvalues with the same rule as :func:`eigen_tridiagonal`."""
    return np.array(sorted((complex(v) for v in values),
                           key=lambda z: (round(z.real, 9), round(z.imag, 9))))
