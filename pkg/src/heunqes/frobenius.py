"""Local exponents and Frobenius series: an independent check on the matrices.

The recurrence for ``y = sum_k c_k z^(rho + k)`` is read off the graded
parts of the operator, so the same code serves every family.  The part of
lowest degree fixes the denominator; the others feed the right-hand side
with shifts of one, two or three indices.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from . import kernels
from .canonical import GenericCoefficients, Point, SingularityKind, classify_singularity
from .specmat.builder import QuasiPolynomial
from .su11 import GeneralizedPolynomial, apply_operator
from .tolerances import DEFAULT, Tolerances

__all__ = [
    "IndicialResult",
    "SeriesTail",
    "NoIndicialEquation",
    "ResonanceError",
    "indicial_exponents",
    "series_coefficients",
    "verify_truncation",
    "inverted",
    "residual",
    "residual_max",
]


class NoIndicialEquation(ValueError):
    """The point is ordinary, or the indicial equation degenerates."""


class ResonanceError(ArithmeticError):
    """A recurrence denominator vanished while its numerator did not."""

    def __init__(self, index: int, rho: complex):
        super().__init__(f"resonant exponent rho={rho}: zero denominator at index {index}")
        self.index = index
        self.rho = rho


@dataclass(frozen=True)
class IndicialResult:
    point: Point
    exponents: List[complex]
    kind: SingularityKind
    #: True when the exponents depend on a8 (raising or lowering part absent)
    eigen_dependent: bool = False


@dataclass(frozen=True)
class SeriesTail:
    #: expansion point; about infinity the series runs in ``t = 1/z``
    point: Point
    rho: complex
    coefficients: np.ndarray
    #: largest tail magnitude divided by the largest head magnitude
    max_relative: float


def _roots(a, b, c, tol: Tolerances) -> List[complex]:
    """Roots of ``a x^2 + b x + c``; linear or degenerate cases handled."""
    if abs(a) > tol.coeff_zero:
        s = cmath.sqrt(b * b - 4 * a * c)
        return [(-b + s) / (2 * a), (-b - s) / (2 * a)]
    if abs(b) > tol.coeff_zero:
        return [-c / b]
    raise NoIndicialEquation("indicial equation degenerates to a constant")


def indicial_exponents(c: GenericCoefficients, point, a8_value: Optional[complex] = None,
                       tol: Tolerances = DEFAULT) -> IndicialResult:
    """Local exponents at ``z = 0`` or ``z = infinity``.

    At zero the exponents ``rho`` describe ``y ~ z^rho``; at infinity they
    describe ``y ~ z^(-rho)``, so that ``rho_0 = 2 tau`` and
    ``rho_inf = -2 sigma`` for the fixed generator parameters.

    Parameters
    ----------
    c : GenericCoefficients
    point : {"zero", "infinity"}
    a8_value : complex, optional
        Replaces ``c.a8`` in the cases where the exponent depends on it
        (lowering part absent at zero, raising part absent at infinity).
    """
    point = Point(point)
    kind = classify_singularity(c, point, tol)
    a8 = c.a8 if a8_value is None else complex(a8_value)
    if point is Point.ZERO:
        if kind is SingularityKind.ORDINARY:
            raise NoIndicialEquation("z = 0 is an ordinary point")
        if not c.is_zero("a2", tol):
            # a2 rho (rho - 1) + a6 rho + a9 = 0
            return IndicialResult(point, _roots(c.a2, c.a6 - c.a2, c.a9, tol), kind)
        if not c.is_zero("a6", tol):
            return IndicialResult(point, [-c.a9 / c.a6], kind)
        if not c.is_zero("a9", tol):
            raise NoIndicialEquation("a2 = a6 = 0 with a9 != 0: no power-series solution")
        # lowering part absent: Euler-type balance inside the diagonal part
        return IndicialResult(point, _roots(c.a1, c.a5 - c.a1, a8, tol), kind, True)
    # y ~ z^(-rho): the raising part must annihilate z^(-rho)
    if not c.is_zero("a0", tol):
        return IndicialResult(point, _roots(c.a0, c.a0 - c.a4, c.a7, tol), kind)
    if not c.is_zero("a4", tol):
        return IndicialResult(point, [c.a7 / c.a4], kind)
    if not c.is_zero("a7", tol):
        raise NoIndicialEquation("a0 = a4 = 0 with a7 != 0: no power-series solution")
    if not c.is_zero("a3", tol):
        raise NoIndicialEquation("raising part absent with a3 != 0")
    return IndicialResult(point, _roots(c.a1, c.a1 - c.a5, a8, tol), kind, True)


def _lead_row(parts: np.ndarray, tol: Tolerances) -> int:
    for s in range(3, -1, -1):
        if np.any(np.abs(parts[s]) > tol.coeff_zero):
            return s
    raise ValueError("operator vanishes identically")


def _series(c, rho, a8_value, n_terms, chop_from, chop_level, tol):
    parts = c.with_a8(a8_value).parts()
    lead = _lead_row(parts, tol)
    rho = complex(rho)
    defect = _indicial_defect(parts, lead, rho)
    if defect > 1e-8:
        raise ValueError(f"rho={rho} is not a local exponent at z = 0 "
                         f"(indicial defect {defect:.3e})")
    coeffs, raw, status = kernels.series_recurrence(
        parts, lead, rho, int(n_terms), int(chop_from), float(chop_level),
        tol.resonance)
    if status >= 0:
        raise ResonanceError(status, rho)
    return coeffs, raw


def series_coefficients(c: GenericCoefficients, rho, a8_value, n_terms: int,
                        tol: Tolerances = DEFAULT) -> GeneralizedPolynomial:
    """Frobenius series about zero with leading coefficient 1.

    When a denominator vanishes together with its numerator the coefficient
    is free and set to zero, which selects the solution with exponent
    exactly ``rho``.

    Raises
    ------
    ResonanceError
        A denominator vanishes and the numerator does not.
    ValueError
        ``rho`` is not a root of the indicial equation.
    """
    if n_terms < 1:
        raise ValueError("n_terms must be positive")
    coeffs, _ = _series(c, rho, a8_value, n_terms, n_terms, 0.0, tol)
    return GeneralizedPolynomial(rho, coeffs)


def _indicial_defect(parts: np.ndarray, lead: int, rho: complex) -> float:
    u, v, w = parts[lead]
    scale = abs(u) * (abs(rho) ** 2 + abs(rho)) + abs(v) * abs(rho) + abs(w)
    return abs(u * rho * (rho - 1) + v * rho + w) / max(scale, 1.0)


def _leading_index(c: GenericCoefficients, qp: QuasiPolynomial, tol: Tolerances,
                   noise: float = 1e-13) -> int:
    """Index of the lowest power of ``qp`` that starts a Frobenius series.

    Only powers that solve the indicial equation qualify; among them the
    lowest whose coefficient stands above rounding noise is taken.
    """
    parts = c.with_a8(-qp.eigen).parts()
    lead = _lead_row(parts, tol)
    mags = np.abs(qp.coeffs)
    cands = [j for j in range(len(mags))
             if _indicial_defect(parts, lead, qp.tau2 + j) <= 1e-8]
    if not cands:
        raise ValueError(f"no power of z^({qp.tau2}) P_N is a local exponent at z = 0")
    for j in cands:
        if mags[j] > noise * mags.max():
            return j
    return cands[0]


def inverted(c: GenericCoefficients) -> GenericCoefficients:
    """The same operator acting on powers of ``t = 1/z``.

    A graded part mapping ``z^p`` to ``z^(p + 1 - s)`` maps ``t^q`` to
    ``t^(q + 1 - (2 - s))``, and ``u p(p-1) + v p + w`` at ``p = -q`` equals
    ``u q(q-1) + (2u - v) q + w``.  Undefined when ``a3 != 0``.
    """
    if c.a3 != 0:
        raise ValueError("inversion needs a3 = 0")
    return GenericCoefficients(
        a0=c.a2, a4=2 * c.a2 - c.a6, a7=c.a9,
        a1=c.a1, a5=2 * c.a1 - c.a5, a8=c.a8,
        a2=c.a0, a6=2 * c.a0 - c.a4, a9=c.a7,
    )


def _tail(c, qp, extra, tol):
    j = _leading_index(c, qp, tol)
    n_head = qp.N - j + 1
    rho = qp.tau2 + j
    _, raw = _series(c, rho, -qp.eigen, n_head + extra, n_head, tol.truncation, tol)
    head = np.max(np.abs(raw[:n_head]))
    tail = raw[n_head:]
    return SeriesTail(Point.ZERO, rho, tail, float(np.max(np.abs(tail)) / head))


def verify_truncation(c: GenericCoefficients, qp: QuasiPolynomial, extra: int = 20,
                      tol: Tolerances = DEFAULT) -> SeriesTail:
    """Check that the Frobenius series at ``qp``'s eigenvalue stops at degree N.

    The series starts at the lowest power of ``qp`` that is a local exponent
    and carries a coefficient above rounding noise.  Past the head, every
    coefficient is computed from its predecessors and then reset to zero
    when it is below ``tol.truncation`` times the head maximum, so that
    rounding noise is not amplified by the recurrence (recurrences about
    irregular points grow factorially).  The reported tail holds the values
    before that reset.

    A quasi-polynomial is a terminating series about infinity as well, and
    in exact arithmetic both series terminate exactly when the eigenvalue is
    right.  Numerically the recurrence is only stable in the direction in
    which the coefficients grow, so when ``a3 = 0`` both expansions are
    computed and the one with the smaller tail is returned; about infinity
    the series runs in ``t = 1/z`` and ``rho`` is the exponent in ``t``.
    """
    if extra < 1:
        raise ValueError("extra must be positive")
    best = _tail(c, qp, extra, tol)
    if c.a3 == 0 and qp.N > 0:
        flipped = QuasiPolynomial(-(qp.tau2 + qp.N), qp.coeffs[::-1], qp.eigen)
        other = _tail(inverted(c), flipped, extra, tol)
        if other.max_relative < best.max_relative:
            best = SeriesTail(Point.INFINITY, other.rho, other.coefficients,
                              other.max_relative)
    return best


def residual(c: GenericCoefficients, qp: QuasiPolynomial) -> GeneralizedPolynomial:
    """Full operator, with ``a8 = -qp.eigen``, applied to ``qp``."""
    return apply_operator(c.with_a8(-qp.eigen), GeneralizedPolynomial(qp.tau2, qp.coeffs))


def residual_max(c: GenericCoefficients, qp: QuasiPolynomial) -> float:
    """Largest residual coefficient relative to the largest coefficient of ``qp``."""
    return residual(c, qp).max_abs() / float(np.max(np.abs(qp.coeffs)))
