"""Solve for the generator parameters (sigma, tau) and the ansatz coefficients.

Matching the quadratic generator ansatz against the graded parts gives

* raising part:   a7 = -2 sigma [a4 - a0 (1 - 2 sigma)]
* lowering part:  a9 = -2 tau  [a6 + a2 (2 tau - 1)]
* doubly lowering part: only ``J-J-`` reaches it, and ``J-J- z^p`` carries
  the factor ``(p - 2 tau)(p - 2 tau - 1)``, which matches ``a3 p (p - 1)``
  only for ``tau = 0``.

Each identity is quadratic, linear or void in its unknown depending on which
coefficients vanish, which yields the three resolutions ``Fixed``, ``Free``
and ``NonAlgebraizable``.
"""
from __future__ import annotations

import cmath
import enum
import itertools
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .canonical import GenericCoefficients
from .su11 import CCoefficients
from .tolerances import DEFAULT, Tolerances

__all__ = [
    "Resolution",
    "Root",
    "ParamResolution",
    "AlgebraizationResult",
    "InconsistentParameters",
    "NON_ALG_RAISING",
    "NON_ALG_LOWERING",
    "solve_sigma",
    "solve_tau",
    "c_coefficients",
    "reconstruct_coefficients",
    "sigma_identity_defect",
    "tau_identity_defect",
    "algebraize",
]

NON_ALG_RAISING = "a0=a4=0, a7!=0"
NON_ALG_LOWERING = "a2=a6=0, a9!=0"


class InconsistentParameters(ValueError):
    """(sigma, tau) do not satisfy the self-consistency identities."""


class Resolution(str, enum.Enum):
    FIXED = "Fixed"
    FREE = "Free"
    NON_ALGEBRAIZABLE = "NonAlgebraizable"


@dataclass(frozen=True)
class Root:
    value: complex
    #: "+" / "-" for the two quadratic branches, "double" for a merged
    #: double root, "linear" for the single root of a linear identity and
    #: "forced" for tau = 0 imposed by the doubly lowering part
    branch: str


@dataclass(frozen=True)
class ParamResolution:
    kind: Resolution
    roots: Tuple[Root, ...] = ()
    reason: Optional[str] = None

    def __post_init__(self):
        if self.kind is Resolution.FIXED and not 1 <= len(self.roots) <= 2:
            raise ValueError("a fixed resolution carries one or two roots")

    @classmethod
    def fixed(cls, *roots: Root) -> "ParamResolution":
        return cls(Resolution.FIXED, tuple(roots))

    @property
    def values(self) -> List[complex]:
        return [r.value for r in self.roots]

    @property
    def is_fixed(self) -> bool:
        return self.kind is Resolution.FIXED

    @property
    def is_free(self) -> bool:
        return self.kind is Resolution.FREE

    @property
    def algebraizable(self) -> bool:
        return self.kind is not Resolution.NON_ALGEBRAIZABLE


def _quadratic(a, b, c, tol: Tolerances) -> ParamResolution:
    """Roots of ``a x^2 + b x + c`` with ``a != 0`` as a resolution."""
    disc = b * b - 4 * a * c
    if abs(disc) <= tol.double_root:
        return ParamResolution.fixed(Root(-b / (2 * a), "double"))
    s = cmath.sqrt(disc)
    return ParamResolution.fixed(Root((-b + s) / (2 * a), "+"),
                                 Root((-b - s) / (2 * a), "-"))


def solve_sigma(c: GenericCoefficients, tol: Tolerances = DEFAULT) -> ParamResolution:
    """Resolve sigma from ``a7 + 2 sigma [a4 - a0 (1 - 2 sigma)] = 0``.

    Examples
    --------
    >>> from heunqes.canonical import GenericCoefficients
    >>> solve_sigma(GenericCoefficients(a0=1, a4=6, a7=6)).values
    [(-1+0j), (-1.5+0j)]
    """
    if not c.is_zero("a0", tol):
        # 4 a0 s^2 + 2 (a4 - a0) s + a7 = 0
        return _quadratic(4 * c.a0, 2 * (c.a4 - c.a0), c.a7, tol)
    if not c.is_zero("a4", tol):
        return ParamResolution.fixed(Root(-c.a7 / (2 * c.a4), "linear"))
    if c.is_zero("a7", tol):
        return ParamResolution(Resolution.FREE)
    return ParamResolution(Resolution.NON_ALGEBRAIZABLE, reason=NON_ALG_RAISING)


def solve_tau(c: GenericCoefficients, tol: Tolerances = DEFAULT) -> ParamResolution:
    """Resolve tau from ``a9 + 2 tau [a6 + a2 (2 tau - 1)] = 0``.

    A nonzero ``a3`` forces ``tau = 0`` before anything else is looked at.
    """
    if not c.is_zero("a3", tol):
        return ParamResolution.fixed(Root(0j, "forced"))
    if not c.is_zero("a2", tol):
        # 4 a2 t^2 + 2 (a6 - a2) t + a9 = 0
        return _quadratic(4 * c.a2, 2 * (c.a6 - c.a2), c.a9, tol)
    if not c.is_zero("a6", tol):
        return ParamResolution.fixed(Root(-c.a9 / (2 * c.a6), "linear"))
    if c.is_zero("a9", tol):
        return ParamResolution(Resolution.FREE)
    return ParamResolution(Resolution.NON_ALGEBRAIZABLE, reason=NON_ALG_LOWERING)


def sigma_identity_defect(c: GenericCoefficients, sigma) -> complex:
    return c.a7 + 2 * sigma * (c.a4 - c.a0 * (1 - 2 * sigma))


def tau_identity_defect(c: GenericCoefficients, tau) -> complex:
    return c.a9 + 2 * tau * (c.a6 + c.a2 * (2 * tau - 1))


def c_coefficients(c: GenericCoefficients, sigma, tau,
                   tol: Tolerances = DEFAULT) -> CCoefficients:
    """Ansatz coefficients for a consistent (sigma, tau).

    Raises
    ------
    InconsistentParameters
        If either identity fails by more than ``tol.consistency`` relative
        to the coefficient scale, or ``tau != 0`` while ``a3 != 0``.
    """
    sigma, tau = complex(sigma), complex(tau)
    scale = c.scale() * max(1.0, abs(sigma), abs(tau)) ** 2
    ds = sigma_identity_defect(c, sigma)
    dt = tau_identity_defect(c, tau)
    if abs(ds) > tol.consistency * scale:
        raise InconsistentParameters(f"sigma={sigma} leaves raising defect {ds}")
    if abs(dt) > tol.consistency * scale:
        raise InconsistentParameters(f"tau={tau} leaves lowering defect {dt}")
    if not c.is_zero("a3", tol) and abs(tau) > tol.consistency:
        raise InconsistentParameters("a3 != 0 requires tau = 0")
    c0 = c.a5 + 2 * c.a1 * (sigma + tau)
    return CCoefficients(
        c_p0=c.a0,
        c_plus=c.a4 - c.a0 * (1 - 3 * sigma - tau),
        c_0m=c.a2,
        c_minus=c.a6 + c.a2 * (sigma + 3 * tau),
        c_pm=c.a1,
        c_0=c0,
        c_mm=c.a3,
        c=c.a8 + c0 * (sigma + tau) - 2 * c.a1 * tau * (1 + 2 * sigma),
    )


def reconstruct_coefficients(cc: CCoefficients, sigma, tau) -> GenericCoefficients:
    """Generic coefficients produced by the ansatz; inverse of :func:`c_coefficients`."""
    s, t = complex(sigma), complex(tau)
    a0 = cc.c_p0
    a1 = cc.c_pm
    a2 = cc.c_0m
    a3 = cc.c_mm
    a4 = cc.c_plus + a0 * (1 - 3 * s - t)
    a5 = cc.c_0 - 2 * a1 * (s + t)
    a6 = cc.c_minus - a2 * (s + 3 * t)
    a7 = -2 * s * (a4 - a0 * (1 - 2 * s))
    a8 = cc.c - cc.c_0 * (s + t) + 2 * a1 * t * (1 + 2 * s)
    a9 = -2 * t * (a6 + a2 * (2 * t - 1))
    return GenericCoefficients(a0, a1, a2, a3, a4, a5, a6, a7, a8, a9)


@dataclass(frozen=True)
class AlgebraizationResult:
    sigma: ParamResolution
    tau: ParamResolution
    #: ansatz coefficients for every (fixed sigma root, fixed tau root) pair
    pairs: Tuple[Tuple[Root, Root, CCoefficients], ...] = ()
    #: pairs dropped because the identities could not be met
    warnings: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def algebraizable(self) -> bool:
        return self.sigma.algebraizable and self.tau.algebraizable

    @property
    def reasons(self) -> List[str]:
        return [r.reason for r in (self.sigma, self.tau)
                if r.kind is Resolution.NON_ALGEBRAIZABLE]


def algebraize(c: GenericCoefficients, tol: Tolerances = DEFAULT) -> AlgebraizationResult:
    """Resolve sigma and tau and the ansatz coefficients of each fixed pair."""
    c.require_valid(tol)
    sig = solve_sigma(c, tol)
    tau = solve_tau(c, tol)
    if not (sig.algebraizable and tau.algebraizable):
        return AlgebraizationResult(sig, tau)
    pairs, warnings = [], []
    for rs, rt in itertools.product(sig.roots, tau.roots):
        try:
            pairs.append((rs, rt, c_coefficients(c, rs.value, rt.value, tol)))
        except InconsistentParameters as exc:
            warnings.append(str(exc))
    return AlgebraizationResult(sig, tau, tuple(pairs), tuple(warnings))
