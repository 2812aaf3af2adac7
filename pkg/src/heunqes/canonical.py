"""Canonical Heun-class equations and their generic coefficient form.

Every equation handled by the package is written as

    P3(z) y'' + P2(z) y' + P1(z) y = 0,

    P3 = a0 z^3 + a1 z^2 + a2 z + a3
    P2 = a4 z^2 + a5 z + a6
    P1 = a7 z + a8 + a9 / z

and the ten constants ``a0 ... a9`` are stored in :class:`GenericCoefficients`.
The spectral parameter always enters through ``a8`` alone, and the
eigenvalue of the invariant-subspace problem is ``lambda = -a8``.  Each
parameter class knows how to move between ``lambda`` and its own native
accessory parameter (``q``, ``mu``, ``delta``, ``B0``, or ``alpha``).

Triconfluent form
-----------------
The triconfluent equation is written here as

    y'' - (3 z^2 + gamma) y' + (alpha + beta - 3) y = 0

i.e. the constant bracket carries no power of ``z`` (``a7 = 0``,
``a8 = alpha + beta - 3``).  Some printed versions set the bracket next to a
``z``; with that reading ``a7`` would be nonzero and the equation would not
be algebraizable at all, so the constant reading is used throughout.
"""
from __future__ import annotations

import enum
from dataclasses import astuple, dataclass, fields
from typing import ClassVar, Union

import numpy as np

from .tolerances import DEFAULT, Tolerances

__all__ = [
    "GenericCoefficients",
    "GeneralHeunParams",
    "ConfluentHeunParams",
    "BiconfluentHeunParams",
    "DoublyConfluentHeunParams",
    "TriconfluentHeunParams",
    "HeunParams",
    "SingularityKind",
    "Point",
    "FAMILIES",
    "to_generic",
    "classify_singularity",
    "params_from_mapping",
]


def _cx(x) -> complex:
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return complex(float(x[0]), float(x[1]))
    v = complex(x)
    if not (np.isfinite(v.real) and np.isfinite(v.imag)):
        raise ValueError(f"non-finite parameter value {x!r}")
    return v


class SingularityKind(str, enum.Enum):
    ORDINARY = "Ordinary"
    REGULAR = "Regular"
    IRREGULAR = "Irregular"


class Point(str, enum.Enum):
    ZERO = "zero"
    INFINITY = "infinity"


@dataclass(frozen=True)
class GenericCoefficients:
    """The ten constants ``a0 ... a9`` of the generic form.

    No validity check happens on construction so that intermediate values
    (e.g. the all-zero result of reconstructing from zero ansatz
    coefficients) are representable; :meth:`require_valid` performs the
    ``P3 != 0`` check and is called by the analysis entry points.
    """

    a0: complex = 0j
    a1: complex = 0j
    a2: complex = 0j
    a3: complex = 0j
    a4: complex = 0j
    a5: complex = 0j
    a6: complex = 0j
    a7: complex = 0j
    a8: complex = 0j
    a9: complex = 0j

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, _cx(getattr(self, f.name)))

    @classmethod
    def from_sequence(cls, values) -> "GenericCoefficients":
        values = list(values)
        if len(values) != 10:
            raise ValueError("expected 10 coefficients")
        return cls(*values)

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=complex)

    def with_a8(self, a8) -> "GenericCoefficients":
        vals = list(astuple(self))
        vals[8] = a8
        return GenericCoefficients(*vals)

    def scale(self) -> float:
        """Largest coefficient magnitude, floored at 1."""
        return max(1.0, float(np.max(np.abs(self.as_array()))))

    def is_zero(self, name: str, tol: Tolerances = DEFAULT) -> bool:
        return abs(getattr(self, name)) <= tol.coeff_zero

    def require_valid(self, tol: Tolerances = DEFAULT) -> None:
        if all(self.is_zero(n, tol) for n in ("a0", "a1", "a2", "a3")):
            raise ValueError("leading polynomial P3 vanishes identically")

    def parts(self) -> np.ndarray:
        """``(4, 3)`` array of the graded parts acting on ``z**p``.

        Row ``s`` holds ``(u, v, w)`` such that the part maps ``z**p`` to
        ``(u p (p-1) + v p + w) z**(p + 1 - s)``.  Rows are the raising,
        diagonal, lowering and doubly lowering pieces.
        """
        return np.array(
            [
                [self.a0, self.a4, self.a7],
                [self.a1, self.a5, self.a8],
                [self.a2, self.a6, self.a9],
                [self.a3, 0.0, 0.0],
            ],
            dtype=complex,
        )


# -- canonical parameter sets -------------------------------------------------


class _Params:
    family: ClassVar[str]
    eigen_name: ClassVar[str]

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if v is not None:
                object.__setattr__(self, f.name, _cx(v))

    def to_generic(self) -> GenericCoefficients:  # pragma: no cover - abstract
        raise NotImplementedError

    def eigen_value(self) -> complex:
        """``lambda = -a8`` for the current parameters."""
        return -self.to_generic().a8

    def native_eigen(self, lam) -> complex:  # pragma: no cover - abstract
        """Native accessory parameter that realizes ``-a8 = lam``."""
        raise NotImplementedError

    def with_eigen(self, lam):  # pragma: no cover - abstract
        """Copy with the accessory parameter set so that ``-a8 = lam``."""
        raise NotImplementedError

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class GeneralHeunParams(_Params):
    """General Heun equation with finite singularities at 0, 1 and ``a``.

    ``epsilon`` is fixed by the Fuchs relation
    ``epsilon = alpha + beta - gamma - delta + 1``; passing an inconsistent
    value raises ``ValueError``.
    """

    family: ClassVar[str] = "GHE"
    eigen_name: ClassVar[str] = "q"

    gamma: complex
    delta: complex
    alpha: complex
    beta: complex
    q: complex
    a: complex
    epsilon: complex = None

    def __post_init__(self):
        super().__post_init__()
        eps = self.alpha + self.beta - self.gamma - self.delta + 1
        if self.epsilon is None:
            object.__setattr__(self, "epsilon", eps)
        elif abs(self.epsilon - eps) > 1e-9 * max(1.0, abs(eps)):
            raise ValueError(
                "epsilon violates the Fuchs relation alpha+beta-gamma-delta+1"
            )
        if abs(self.a) <= DEFAULT.coeff_zero or abs(self.a - 1) <= DEFAULT.coeff_zero:
            raise ValueError("third singular point a must differ from 0 and 1")

    def to_generic(self) -> GenericCoefficients:
        g, d, al, be, a = self.gamma, self.delta, self.alpha, self.beta, self.a
        return GenericCoefficients(
            a0=1,
            a1=-(a + 1),
            a2=a,
            a3=0,
            a4=1 + al + be,
            a5=-(a * g + a * d - d + al + be + 1),
            a6=a * g,
            a7=al * be,
            a8=-self.q,
            a9=0,
        )

    def native_eigen(self, lam) -> complex:
        return complex(lam)

    def with_eigen(self, lam) -> "GeneralHeunParams":
        return GeneralHeunParams(self.gamma, self.delta, self.alpha, self.beta,
                                 lam, self.a)


@dataclass(frozen=True)
class ConfluentHeunParams(_Params):
    """Confluent Heun equation, regular at 0 and 1, irregular at infinity."""

    family: ClassVar[str] = "CHE"
    eigen_name: ClassVar[str] = "mu"

    kappa: complex
    gamma: complex
    delta: complex
    mu: complex
    nu: complex

    def to_generic(self) -> GenericCoefficients:
        return GenericCoefficients(
            a0=0,
            a1=1,
            a2=-1,
            a3=0,
            a4=self.kappa,
            a5=self.gamma + self.delta - self.kappa,
            a6=-self.gamma,
            a7=self.mu + self.nu,
            a8=-self.mu,
            a9=0,
        )

    def native_eigen(self, lam) -> complex:
        return complex(lam)

    def with_eigen(self, lam) -> "ConfluentHeunParams":
        # keep mu + nu fixed: it carries the raising part
        total = self.mu + self.nu
        return ConfluentHeunParams(self.kappa, self.gamma, self.delta, lam,
                                   total - lam)


@dataclass(frozen=True)
class BiconfluentHeunParams(_Params):
    """Biconfluent Heun equation, regular at 0, irregular at infinity."""

    family: ClassVar[str] = "BHE"
    eigen_name: ClassVar[str] = "delta"

    alpha: complex
    beta: complex
    gamma: complex
    delta: complex

    def to_generic(self) -> GenericCoefficients:
        al, be = self.alpha, self.beta
        return GenericCoefficients(
            a0=0,
            a1=0,
            a2=1,
            a3=0,
            a4=-2,
            a5=-be,
            a6=1 + al,
            a7=self.gamma - al - 2,
            a8=-0.5 * (self.delta + (1 + al) * be),
            a9=0,
        )

    def native_eigen(self, lam) -> complex:
        return 2 * complex(lam) - (1 + self.alpha) * self.beta

    def with_eigen(self, lam) -> "BiconfluentHeunParams":
        return BiconfluentHeunParams(self.alpha, self.beta, self.gamma,
                                     self.native_eigen(lam))


@dataclass(frozen=True)
class DoublyConfluentHeunParams(_Params):
    """Doubly confluent Heun equation, irregular at both 0 and infinity."""

    family: ClassVar[str] = "DHE"
    eigen_name: ClassVar[str] = "B0"

    alpha1: complex
    alpham1: complex
    B1: complex
    B0: complex
    Bm1: complex

    def to_generic(self) -> GenericCoefficients:
        a1, am1 = self.alpha1, self.alpham1
        return GenericCoefficients(
            a0=0,
            a1=1,
            a2=0,
            a3=0,
            a4=a1,
            a5=1,
            a6=am1,
            a7=self.B1 + a1 / 2,
            a8=self.B0 + a1 * am1 / 2,
            a9=self.Bm1 - am1 / 2,
        )

    def native_eigen(self, lam) -> complex:
        return -complex(lam) - self.alpha1 * self.alpham1 / 2

    def with_eigen(self, lam) -> "DoublyConfluentHeunParams":
        return DoublyConfluentHeunParams(self.alpha1, self.alpham1, self.B1,
                                         self.native_eigen(lam), self.Bm1)


@dataclass(frozen=True)
class TriconfluentHeunParams(_Params):
    """Triconfluent Heun equation, ordinary at 0, irregular at infinity.

    The accessory combination is ``alpha + beta - 3``; :meth:`with_eigen`
    adjusts ``alpha`` and leaves ``beta`` alone.
    """

    family: ClassVar[str] = "THE"
    eigen_name: ClassVar[str] = "alpha"

    alpha: complex
    beta: complex
    gamma: complex

    def to_generic(self) -> GenericCoefficients:
        return GenericCoefficients(
            a0=0,
            a1=0,
            a2=0,
            a3=1,
            a4=-3,
            a5=0,
            a6=-self.gamma,
            a7=0,
            a8=self.alpha + (self.beta - 3),
            a9=0,
        )

    def native_eigen(self, lam) -> complex:
        return 3 - self.beta - complex(lam)

    def with_eigen(self, lam) -> "TriconfluentHeunParams":
        return TriconfluentHeunParams(self.native_eigen(lam), self.beta,
                                      self.gamma)


HeunParams = Union[
    GeneralHeunParams,
    ConfluentHeunParams,
    BiconfluentHeunParams,
    DoublyConfluentHeunParams,
    TriconfluentHeunParams,
]

FAMILIES = {
    cls.family: cls
    for cls in (
        GeneralHeunParams,
        ConfluentHeunParams,
        BiconfluentHeunParams,
        DoublyConfluentHeunParams,
        TriconfluentHeunParams,
    )
}


def params_from_mapping(family: str, values: dict) -> HeunParams:
    """Build a parameter object from a family tag and a name->value map."""
    try:
        cls = FAMILIES[family.upper()]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; expected one of "
                         f"{sorted(FAMILIES)}") from None
    names = [f.name for f in fields(cls)]
    unknown = set(values) - set(names)
    if unknown:
        raise ValueError(f"unknown {cls.family} parameters: {sorted(unknown)}")
    required = [f.name for f in fields(cls) if f.name != "epsilon"]
    missing = [n for n in required if n not in values]
    if missing:
        raise ValueError(f"missing {cls.family} parameters: {missing}")
    return cls(**values)


def to_generic(eq: HeunParams) -> GenericCoefficients:
    """Generic coefficients ``a0 ... a9`` of a canonical equation."""
    return eq.to_generic()


def _raising_absent(c: GenericCoefficients, tol: Tolerances) -> bool:
    return all(c.is_zero(n, tol) for n in ("a0", "a4", "a7"))


def _lowering_absent(c: GenericCoefficients, tol: Tolerances) -> bool:
    return all(c.is_zero(n, tol) for n in ("a2", "a3", "a6", "a9"))


def classify_singularity(c: GenericCoefficients, point,
                         tol: Tolerances = DEFAULT) -> SingularityKind:
    """Nature of ``z = 0`` or ``z = infinity`` for the generic form.

    When the lowering part is absent at 0 (or the raising part at infinity)
    the equation is of Euler type there, so the point is regular even
    though the leading coefficient has a double zero.
    """
    point = Point(point)
    if point is Point.ZERO:
        if not c.is_zero("a3", tol):
            return SingularityKind.ORDINARY
        if not c.is_zero("a2", tol) or _lowering_absent(c, tol):
            return SingularityKind.REGULAR
        return SingularityKind.IRREGULAR
    if not c.is_zero("a0", tol):
        return SingularityKind.REGULAR
    if _raising_absent(c, tol) and c.is_zero("a3", tol):
        return SingularityKind.REGULAR
    return SingularityKind.IRREGULAR
