"""Which su(1,1) representations host the bounded solution families.

The monomials ``z^(2 tau + k)``, ``k >= 0``, form a ladder bounded below with
lowest ``J0`` weight ``-(sigma - tau)``; the monomials ``z^(2 sigma - k)``
form one bounded above with highest weight ``sigma - tau``.  With
``j = sigma - tau`` the Casimir is ``-j (j + 1)``.  When ``2 j`` is a
non-negative integer both ladders contain the common finite piece of
dimension ``2 j + 1``.

Dimension convention: finite pieces are labelled by their dimension
``d = 2 j + 1`` and have Casimir ``(1 - d^2)/4``.

:func:`taxonomy_table` lists, for a real Casimir ``c``, the weight
intervals that each representation type may occupy.  Boundaries are the
roots ``h = (-1 +- s)/2`` and ``h = (1 +- s)/2`` with ``s = sqrt(1 - 4c)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional

from .solvability import level_of
from .su11 import GeneratorParams, casimir_value
from .tolerances import DEFAULT, Tolerances

__all__ = [
    "RepKind",
    "RepClass",
    "WeightData",
    "RepClassification",
    "TaxonomyRow",
    "weight_data",
    "classify_representation",
    "boundary_weights",
    "taxonomy_table",
]


class RepKind(str, enum.Enum):
    PRINCIPAL_SERIES = "PS"
    COMPLEMENTARY_SERIES = "CS"
    POSITIVE_DISCRETE = "PD"
    NEGATIVE_DISCRETE = "ND"
    NON_UNITARY_UNBOUNDED = "NUB"
    NON_UNITARY_BOUNDED_BELOW = "NBB"
    NON_UNITARY_BOUNDED_ABOVE = "NBA"
    FINITE_DIMENSIONAL = "FD"
    #: complex j: the ladders exist but no unitarity class is assigned
    BOUNDED_UNCLASSIFIED = "bounded-unclassified"


@dataclass(frozen=True)
class RepClass:
    kind: RepKind
    dim: Optional[int] = None

    def __post_init__(self):
        if (self.kind is RepKind.FINITE_DIMENSIONAL) != (self.dim is not None):
            raise ValueError("dim is given exactly for finite-dimensional classes")
        if self.dim is not None and self.dim < 1:
            raise ValueError("dimension must be positive")

    def __str__(self) -> str:
        return f"FD({self.dim})" if self.dim else self.kind.value


@dataclass(frozen=True)
class WeightData:
    """Casimir and extreme ``J0`` weights of the two bounded ladders.

    ``j0_min`` belongs to the ladder bounded below, ``j0_max`` to the one
    bounded above.  The two ladders share a finite piece exactly when
    ``j0_max - j0_min`` is a non-negative integer (see :attr:`overlap`).
    """

    casimir: complex
    j0_max: Optional[complex]
    j0_min: Optional[complex]
    bounded_above: bool
    bounded_below: bool

    @property
    def j(self) -> complex:
        if self.j0_max is not None:
            return complex(self.j0_max)
        return -complex(self.j0_min)

    @property
    def overlap(self) -> Optional[int]:
        """Number of shared states minus one, or None without overlap."""
        if self.j0_max is None or self.j0_min is None:
            return None
        return level_of(self.j0_max - self.j0_min)


def weight_data(sigma, tau) -> WeightData:
    j = complex(sigma) - complex(tau)
    return WeightData(
        casimir=casimir_value(GeneratorParams(sigma, tau)),
        j0_max=j,
        j0_min=-j,
        bounded_above=True,
        bounded_below=True,
    )


@dataclass(frozen=True)
class RepClassification:
    bounded_below: RepClass
    bounded_above: RepClass
    finite_piece: Optional[RepClass] = None


def classify_representation(w: WeightData, tol: Tolerances = DEFAULT) -> RepClassification:
    """Representation types of the bounded-below and bounded-above ladders."""
    j = w.j
    if abs(j.imag) > tol.half_integer:
        tag = RepClass(RepKind.BOUNDED_UNCLASSIFIED)
        return RepClassification(tag, tag)
    if j.real < 0 and level_of(2 * j, tol) is None:
        return RepClassification(RepClass(RepKind.POSITIVE_DISCRETE),
                                 RepClass(RepKind.NEGATIVE_DISCRETE))
    n = level_of(2 * j, tol)
    fd = RepClass(RepKind.FINITE_DIMENSIONAL, n + 1) if n is not None else None
    return RepClassification(RepClass(RepKind.NON_UNITARY_BOUNDED_BELOW),
                             RepClass(RepKind.NON_UNITARY_BOUNDED_ABOVE), fd)


@dataclass(frozen=True)
class TaxonomyRow:
    casimir: float
    cls: str
    h_bound_low: float
    h_bound_high: float


def boundary_weights(c: float) -> List[float]:
    """Roots of ``h^2 + h + c = 0``; one value at the double root ``c = 1/4``."""
    if c > 0.25:
        return []
    s = math.sqrt(1 - 4 * c)
    return sorted({(-1 - s) / 2, (-1 + s) / 2})


def taxonomy_table(c_values: Iterable[float], tol: float = 1e-12) -> List[TaxonomyRow]:
    """Admissible weight intervals per representation type.

    Unbounded ends are ``-inf``/``inf``.  Finite-dimensional rows give the
    lowest and highest weight of the ``d``-dimensional piece, emitted when
    ``sqrt(1 - 4c)`` is a positive integer ``d``.
    """
    inf = math.inf
    rows: List[TaxonomyRow] = []
    for c in c_values:
        c = float(c)
        out = []
        if c >= 0.25 - tol:
            out.append(("PS", -inf, inf))
        s = math.sqrt(max(1 - 4 * c, 0.0)) if c <= 0.25 + tol else None
        if s is not None:
            if 0 < c < 0.25:
                out.append(("CS", -inf, (-1 - s) / 2))
                out.append(("CS", (-1 + s) / 2, inf))
            if c > 0:
                lows = sorted({(1 - s) / 2, (1 + s) / 2})
                highs = sorted({(-1 - s) / 2, (-1 + s) / 2})
            else:
                lows, highs = [(1 + s) / 2], [(-1 - s) / 2]
            out += [("PD", h, inf) for h in lows]
            out += [("ND", -inf, h) for h in highs]
            if c < 0.25 - tol:
                out.append(("NUB", -inf, inf))
            if c <= tol:
                out.append(("NBB", (1 - s) / 2, inf))
                out.append(("NBA", -inf, (-1 + s) / 2))
            d = round(s)
            if d >= 1 and abs(s - d) <= 1e-9:
                out.append((f"FD({d})", (1 - d) / 2, (d - 1) / 2))
        rows += [TaxonomyRow(c, cls, lo, hi) for cls, lo, hi in out]
    return rows
