"""Quasi-exact and exact solvability from the (sigma, tau) resolution.

A pair (sigma, tau) with ``sigma - tau = N/2``, ``N`` a non-negative integer,
makes the monomials ``z^(2 tau) ... z^(2 tau + N)`` an invariant subspace of
the operator.  When one of the two parameters is free the condition can be
met for every ``N`` and the equation is exactly solvable.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from . import canonical as cn
from .algebraize import AlgebraizationResult, algebraize
from .canonical import GenericCoefficients
from .tolerances import DEFAULT, Tolerances

__all__ = [
    "Mode",
    "QesInstance",
    "SolvabilityReport",
    "Condition",
    "ConditionReport",
    "level_of",
    "classify",
    "analyze",
    "enumerate_qes_levels",
    "per_equation_conditions",
]


class Mode(str, enum.Enum):
    NOT_SOLVABLE = "NotSolvableByQuasiPolynomials"
    QUASI_EXACT = "QuasiExact"
    EXACT_SIGMA_FREE = "ExactSigmaFree"
    EXACT_TAU_FREE = "ExactTauFree"
    FULLY_DIAGONAL = "FullyDiagonal"


@dataclass(frozen=True)
class QesInstance:
    """A (sigma, tau, N) triple with ``sigma - tau = N/2``."""

    sigma: complex
    tau: complex
    N: int
    sigma_branch: str = "free"
    tau_branch: str = "free"

    def __post_init__(self):
        object.__setattr__(self, "sigma", complex(self.sigma))
        object.__setattr__(self, "tau", complex(self.tau))
        if self.N < 0:
            raise ValueError("N must be non-negative")

    @property
    def exponent(self) -> complex:
        """Base exponent ``2 tau`` of the quasi-polynomial."""
        return 2 * self.tau

    @property
    def descriptor(self) -> str:
        return f"z^({_fmt(2 * self.tau)}) P_{self.N}(z)"


def _fmt(z: complex) -> str:
    z = complex(z)
    if abs(z.imag) < 1e-15:
        return f"{z.real:.12g}"
    return f"{z.real:.12g}{z.imag:+.12g}j"


@dataclass(frozen=True)
class SolvabilityReport:
    mode: Mode
    instances: Tuple[QesInstance, ...] = ()
    #: fixed tau values (sigma-free mode) or fixed sigma values (tau-free mode)
    free_partner: Tuple[complex, ...] = ()

    @property
    def descriptors(self) -> List[str]:
        return [inst.descriptor for inst in self.instances]


def level_of(value, tol: Tolerances = DEFAULT) -> Optional[int]:
    """``N`` if ``value`` is a non-negative integer within tolerance, else None.

    >>> level_of(2 + 1e-12), level_of(-1.0), level_of(0.5)
    (2, None, None)
    """
    value = complex(value)
    if abs(value.imag) > tol.half_integer:
        return None
    n = round(value.real)
    if abs(value.real - n) > tol.half_integer or n < 0:
        return None
    return int(n)


def _key(tau2: complex, n: int) -> Tuple[float, float, int]:
    return (round(tau2.real, 8) + 0.0, round(tau2.imag, 8) + 0.0, n)


def classify(c: GenericCoefficients, alg: AlgebraizationResult,
             tol: Tolerances = DEFAULT) -> SolvabilityReport:
    """Solvability mode and the concrete QES instances of an algebraizable form."""
    if not alg.algebraizable:
        raise ValueError("classification needs an algebraizable equation: "
                         + "; ".join(alg.reasons))
    sig, tau = alg.sigma, alg.tau
    if sig.is_free and tau.is_free:
        return SolvabilityReport(Mode.FULLY_DIAGONAL)
    if sig.is_free:
        return SolvabilityReport(Mode.EXACT_SIGMA_FREE, free_partner=tuple(tau.values))
    if tau.is_free:
        return SolvabilityReport(Mode.EXACT_TAU_FREE, free_partner=tuple(sig.values))
    seen, found = set(), []
    for rs in sig.roots:
        for rt in tau.roots:
            n = level_of(2 * (rs.value - rt.value), tol)
            if n is None:
                continue
            key = _key(2 * rt.value, n)
            if key in seen:
                continue
            seen.add(key)
            found.append(QesInstance(rs.value, rt.value, n, rs.branch, rt.branch))
    if not found:
        return SolvabilityReport(Mode.NOT_SOLVABLE)
    found.sort(key=lambda i: (i.N, i.tau.real, i.tau.imag))
    return SolvabilityReport(Mode.QUASI_EXACT, tuple(found))


def analyze(c: GenericCoefficients, tol: Tolerances = DEFAULT):
    """``(algebraization, report)``; report is None when not algebraizable."""
    alg = algebraize(c, tol)
    if not alg.algebraizable:
        return alg, None
    return alg, classify(c, alg, tol)


def enumerate_qes_levels(report: SolvabilityReport, Nmax: int,
                         tau: Optional[complex] = None) -> List[QesInstance]:
    """Concrete instances with ``N <= Nmax``.

    Parameters
    ----------
    report : SolvabilityReport
    Nmax : int
    tau : complex, optional
        Exponent choice for the fully diagonal mode, where every monomial is
        an eigenfunction; ignored otherwise.
    """
    if Nmax < 0:
        raise ValueError("Nmax must be non-negative")
    mode = report.mode
    if mode is Mode.QUASI_EXACT:
        return [i for i in report.instances if i.N <= Nmax]
    if mode is Mode.EXACT_SIGMA_FREE:
        return [QesInstance(t + n / 2, t, n, "free", "fixed")
                for t in report.free_partner for n in range(Nmax + 1)]
    if mode is Mode.EXACT_TAU_FREE:
        return [QesInstance(s, s - n / 2, n, "fixed", "free")
                for s in report.free_partner for n in range(Nmax + 1)]
    if mode is Mode.FULLY_DIAGONAL:
        if tau is None:
            raise ValueError("fully diagonal mode needs an explicit tau")
        return [QesInstance(tau, tau, 0)]
    return []


# -- closed-form conditions per family ---------------------------------------


@dataclass(frozen=True)
class Condition:
    text: str
    N: int
    #: base exponent 2 tau of the resulting quasi-polynomial
    tau2: complex


@dataclass(frozen=True)
class ConditionReport:
    family: str
    mode: str
    conditions: Tuple[Condition, ...] = ()
    free_partner: Tuple[complex, ...] = ()
    notes: Tuple[str, ...] = field(default_factory=tuple)

    def levels(self) -> set:
        return {_key(complex(c.tau2), c.N) for c in self.conditions}

    def lines(self) -> List[str]:
        out = [f"{self.family}: {self.mode}"]
        out += [f"  {c.text} -> N={c.N}, exponent {_fmt(c.tau2)}"
                for c in self.conditions]
        out += [f"  {n}" for n in self.notes]
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())


def _collect(family, candidates, tol) -> ConditionReport:
    seen, conds = set(), []
    for text, value, tau2 in candidates:
        n = level_of(value, tol)
        if n is None:
            continue
        key = _key(complex(tau2), n)
        if key in seen:
            continue
        seen.add(key)
        conds.append(Condition(text, n, complex(tau2)))
    mode = Mode.QUASI_EXACT if conds else Mode.NOT_SOLVABLE
    return ConditionReport(family, mode.value, tuple(conds))


def per_equation_conditions(eq: cn.HeunParams,
                            tol: Tolerances = DEFAULT) -> ConditionReport:
    """Evaluate the closed-form solvability conditions of a canonical equation.

    Works directly from the native parameters, without going through the
    generic coefficients, so it serves as an independent check on
    :func:`classify`.
    """
    z = tol.coeff_zero
    if isinstance(eq, cn.GeneralHeunParams):
        g, al, be = eq.gamma, eq.alpha, eq.beta
        return _collect("GHE", [
            ("alpha = -N", -al, 0),
            ("beta = -N", -be, 0),
            ("alpha = gamma - 1 - N", g - 1 - al, 1 - g),
            ("beta = gamma - 1 - N", g - 1 - be, 1 - g),
        ], tol)
    if isinstance(eq, cn.ConfluentHeunParams):
        k, g, s = eq.kappa, eq.gamma, eq.mu + eq.nu
        if abs(k) <= z:
            if abs(s) <= z:
                # same double-root rule as the quadratic solver (discriminant 4(1-gamma)^2)
                double = abs(4 * (1 - g) ** 2) <= tol.double_root
                taus = (0j,) if double else (0j, (1 - g) / 2)
                return ConditionReport(
                    "CHE", Mode.EXACT_SIGMA_FREE.value, free_partner=taus,
                    notes=("kappa = mu + nu = 0: hypergeometric reduction",))
            return ConditionReport("CHE", "NonAlgebraizable",
                                   notes=("kappa = 0 with mu + nu != 0",))
        return _collect("CHE", [
            ("-(mu + nu)/kappa = N", -s / k, 0),
            ("-(mu + nu)/kappa - (1 - gamma) = N", -s / k - (1 - g), 1 - g),
        ], tol)
    if isinstance(eq, cn.BiconfluentHeunParams):
        al, g = eq.alpha, eq.gamma
        return _collect("BHE", [
            ("(gamma - alpha - 2)/2 = N", (g - al - 2) / 2, 0),
            ("(gamma + alpha - 2)/2 = N", (g + al - 2) / 2, -al),
        ], tol)
    if isinstance(eq, cn.DoublyConfluentHeunParams):
        a1, am1 = eq.alpha1, eq.alpham1
        sig_free = abs(a1) <= z and abs(eq.B1) <= z
        tau_free = abs(am1) <= z and abs(eq.Bm1) <= z
        notes = []
        if abs(a1) <= z and not sig_free:
            notes.append("alpha1 = 0 with B1 != 0")
        if abs(am1) <= z and not tau_free:
            notes.append("alpha_-1 = 0 with B_-1 != 0")
        if notes:
            return ConditionReport("DHE", "NonAlgebraizable", notes=tuple(notes))
        two_sigma = None if sig_free else -(eq.B1 / a1 + 0.5)
        two_tau = None if tau_free else -(eq.Bm1 / am1 - 0.5)
        if sig_free and tau_free:
            return ConditionReport("DHE", Mode.FULLY_DIAGONAL.value,
                                   notes=("every monomial z^c is an eigenfunction",))
        if sig_free:
            return ConditionReport("DHE", Mode.EXACT_SIGMA_FREE.value,
                                   free_partner=(two_tau / 2,))
        if tau_free:
            return ConditionReport("DHE", Mode.EXACT_TAU_FREE.value,
                                   free_partner=(two_sigma / 2,))
        return _collect("DHE", [
            ("-(B1/alpha1 + 1/2) + (B_-1/alpha_-1 - 1/2) = N",
             two_sigma - two_tau, two_tau),
        ], tol)
    if isinstance(eq, cn.TriconfluentHeunParams):
        return ConditionReport(
            "THE", Mode.QUASI_EXACT.value,
            (Condition("singlet: constant solution only", 0, 0j),))
    raise TypeError(f"unsupported parameter object {type(eq).__name__}")
