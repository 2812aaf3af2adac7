"""Bi-parametric su(1,1) generators and the graded Heun operator.

The generators act on generalized monomials ``z**q`` (``q`` complex) as

    J+ z^q = (q - 2 sigma) z^(q+1)
    J0 z^q = (q - sigma - tau) z^q
    J- z^q = (q - 2 tau) z^(q-1)

i.e. ``J+ = z^2 d/dz - 2 sigma z``, ``J0 = z d/dz - (sigma + tau)`` and
``J- = d/dz - 2 tau / z``.  They satisfy ``[J0, J+-] = +-J+-`` and
``[J+, J-] = -2 J0``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .canonical import GenericCoefficients
from .tolerances import DEFAULT

__all__ = [
    "GeneralizedPolynomial",
    "GeneratorParams",
    "CCoefficients",
    "Generator",
    "GradedPart",
    "CommutatorPair",
    "apply_generator",
    "apply_graded_part",
    "apply_operator",
    "apply_ansatz",
    "casimir_operator",
    "casimir_value",
    "commutator_defect",
]


@dataclass(frozen=True)
class GeneralizedPolynomial:
    """``sum_k coeffs[k] * z**(base + k)`` for a complex base exponent.

    Trailing coefficients with magnitude ``<= trim`` are dropped on
    construction, so the zero polynomial has an empty coefficient array.
    """

    base: complex
    coeffs: np.ndarray = field(default_factory=lambda: np.zeros(0, complex))
    trim: float = DEFAULT.trim

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex)).copy()
        n = len(c)
        while n and abs(c[n - 1]) <= self.trim:
            n -= 1
        object.__setattr__(self, "coeffs", c[:n])
        object.__setattr__(self, "base", complex(self.base))

    @classmethod
    def monomial(cls, q, coeff=1.0) -> "GeneralizedPolynomial":
        return cls(q, [coeff])

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    def powers(self) -> np.ndarray:
        return self.base + np.arange(len(self.coeffs))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if len(self.coeffs) else 0.0

    def scaled(self, s) -> "GeneralizedPolynomial":
        return GeneralizedPolynomial(self.base, self.coeffs * s, self.trim)

    def _offset(self, other: "GeneralizedPolynomial", tol: float) -> int:
        d = other.base - self.base
        k = round(d.real)
        if abs(d - k) > tol:
            raise ValueError(
                f"base exponents {self.base} and {other.base} do not differ "
                "by an integer"
            )
        return int(k)

    def add(self, other: "GeneralizedPolynomial",
            tol: float = DEFAULT.exponent_merge) -> "GeneralizedPolynomial":
        """Merge two values whose base exponents differ by an integer."""
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        k = self._offset(other, tol)
        lo = min(0, k)
        hi = max(len(self.coeffs), k + len(other.coeffs))
        out = np.zeros(hi - lo, dtype=complex)
        out[-lo:-lo + len(self.coeffs)] += self.coeffs
        out[k - lo:k - lo + len(other.coeffs)] += other.coeffs
        return GeneralizedPolynomial(self.base + lo, out, self.trim)

    def __add__(self, other):
        return self.add(other)

    def __sub__(self, other):
        return self.add(other.scaled(-1))

    def allclose(self, other: "GeneralizedPolynomial", atol: float = 1e-12) -> bool:
        diff = self - other
        return diff.max_abs() <= atol


@dataclass(frozen=True)
class GeneratorParams:
    sigma: complex
    tau: complex

    def __post_init__(self):
        object.__setattr__(self, "sigma", complex(self.sigma))
        object.__setattr__(self, "tau", complex(self.tau))


@dataclass(frozen=True)
class CCoefficients:
    """Coefficients of the quadratic ansatz

        H = c_p0 J+J0 + c_pm J+J- + c_0m J0J- + c_mm J-J-
            + c_plus J+ + c_0 J0 + c_minus J- + c

    (the ``J+J+`` and ``J0J0`` terms never occur for second-order operators
    of this shape).
    """

    c_p0: complex = 0j
    c_plus: complex = 0j
    c_0m: complex = 0j
    c_minus: complex = 0j
    c_pm: complex = 0j
    c_0: complex = 0j
    c_mm: complex = 0j
    c: complex = 0j

    def __post_init__(self):
        for name in ("c_p0", "c_plus", "c_0m", "c_minus", "c_pm", "c_0",
                     "c_mm", "c"):
            object.__setattr__(self, name, complex(getattr(self, name)))


class Generator(str, enum.Enum):
    JPLUS = "Jplus"
    JZERO = "Jzero"
    JMINUS = "Jminus"


class GradedPart(str, enum.Enum):
    OPLUS = "Oplus"
    OZERO = "Ozero"
    OMINUS = "Ominus"
    OMINUSMINUS = "Ominusminus"


class CommutatorPair(str, enum.Enum):
    J0JP = "J0Jp"
    J0JM = "J0Jm"
    JPJM = "JpJm"


def _termwise(x: GeneralizedPolynomial, shift: int,
              weight: Callable[[np.ndarray], np.ndarray]) -> GeneralizedPolynomial:
    q = x.powers()
    return GeneralizedPolynomial(x.base + shift, x.coeffs * weight(q), x.trim)


def apply_generator(g, p: GeneratorParams, x: GeneralizedPolynomial) -> GeneralizedPolynomial:
    """Apply ``J+``, ``J0`` or ``J-`` to a generalized polynomial."""
    g = Generator(g)
    s, t = p.sigma, p.tau
    if g is Generator.JPLUS:
        return _termwise(x, 1, lambda q: q - 2 * s)
    if g is Generator.JZERO:
        return _termwise(x, 0, lambda q: q - s - t)
    return _termwise(x, -1, lambda q: q - 2 * t)


_PART_ROW = {
    GradedPart.OPLUS: (0, 1),
    GradedPart.OZERO: (1, 0),
    GradedPart.OMINUS: (2, -1),
    GradedPart.OMINUSMINUS: (3, -2),
}


def apply_graded_part(part, c: GenericCoefficients,
                      x: GeneralizedPolynomial) -> GeneralizedPolynomial:
    """Apply one degree-homogeneous piece of the Heun operator.

    ``Oplus`` raises every power by one, ``Ozero`` keeps it,
    ``Ominus`` lowers it by one and ``Ominusminus`` by two.
    """
    row, shift = _PART_ROW[GradedPart(part)]
    u, v, w = c.parts()[row]
    return _termwise(x, shift, lambda q: u * q * (q - 1) + v * q + w)


def apply_operator(c: GenericCoefficients, x: GeneralizedPolynomial) -> GeneralizedPolynomial:
    """Full operator ``P3 y'' + P2 y' + P1 y`` as the sum of its graded parts."""
    out = GeneralizedPolynomial(x.base - 2, [], x.trim)
    for part in GradedPart:
        out = out + apply_graded_part(part, c, x)
    return out


def _gen(p, g):
    return lambda x: apply_generator(g, p, x)


def apply_ansatz(cc: CCoefficients, p: GeneratorParams,
                 x: GeneralizedPolynomial) -> GeneralizedPolynomial:
    """Evaluate the quadratic generator combination on ``x``."""
    jp, j0, jm = (_gen(p, g) for g in Generator)
    terms = [
        (cc.c_p0, jp(j0(x))),
        (cc.c_pm, jp(jm(x))),
        (cc.c_0m, j0(jm(x))),
        (cc.c_mm, jm(jm(x))),
        (cc.c_plus, jp(x)),
        (cc.c_0, j0(x)),
        (cc.c_minus, jm(x)),
        (cc.c, x),
    ]
    out = GeneralizedPolynomial(x.base - 2, [], x.trim)
    for coeff, val in terms:
        out = out + val.scaled(coeff)
    return out


def casimir_operator(p: GeneratorParams, x: GeneralizedPolynomial) -> GeneralizedPolynomial:
    """``(J+J- + J-J+)/2 - J0 J0`` applied to ``x``."""
    jp, j0, jm = (_gen(p, g) for g in Generator)
    return (jp(jm(x)) + jm(jp(x))).scaled(0.5) - j0(j0(x))


def casimir_value(p: GeneratorParams) -> complex:
    """Scalar value ``-(sigma - tau)(sigma - tau + 1)`` of the Casimir."""
    j = p.sigma - p.tau
    return -j * (j + 1)


def commutator_defect(p: GeneratorParams, pair, probe_powers: Iterable,
                      relative: bool = False) -> float:
    """Largest coefficient of ``([A, B] - expected) z**q`` over the probes.

    With ``relative=True`` each defect is divided by the magnitude of the
    larger of the two products ``AB z**q`` and ``BA z**q`` (floored at 1),
    which makes the number comparable with machine precision.
    """
    pair = CommutatorPair(pair)
    probes = list(probe_powers)
    if not probes:
        raise ValueError("at least one probe power is required")
    jp, j0, jm = (_gen(p, g) for g in Generator)
    if pair is CommutatorPair.J0JP:
        a, b, expected = j0, jp, jp
    elif pair is CommutatorPair.J0JM:
        a, b, expected = j0, jm, lambda x: jm(x).scaled(-1)
    else:
        a, b, expected = jp, jm, lambda x: j0(x).scaled(-2)
    worst = 0.0
    for q in probes:
        x = GeneralizedPolynomial.monomial(q)
        ab, ba = a(b(x)), b(a(x))
        d = (ab - ba - expected(x)).max_abs()
        if relative:
            d /= max(1.0, ab.max_abs(), ba.max_abs())
        worst = max(worst, d)
    return worst
