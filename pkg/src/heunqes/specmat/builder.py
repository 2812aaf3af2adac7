"""Matrix of the Heun operator on a finite invariant monomial subspace."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..canonical import GenericCoefficients
from ..solvability import level_of
from ..tolerances import DEFAULT, Tolerances

__all__ = ["InvariantMatrix", "ClosureError", "QuasiPolynomial",
           "build_invariant_matrix"]


class ClosureError(ValueError):
    """The requested monomial span is not mapped into itself."""


@dataclass(frozen=True)
class InvariantMatrix:
    """Banded matrix of ``H - a8`` on the span of ``z**powers[k]``.

    ``M[k+1, k] = sub[k]``, ``M[k, k] = diag[k]``, ``M[k, k+1] = sup[k]`` and
    ``M[k, k+2] = sup2[k]``.  The last band only receives the doubly lowering
    part of the operator, which can be nonzero only when ``a3 != 0``.
    ``shift`` is the ``a8`` that was left out, so on the subspace the full
    operator is ``M + shift * I``.
    """

    N: int
    powers: np.ndarray
    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray
    sup2: np.ndarray = field(default_factory=lambda: np.zeros(0, complex))
    shift: complex = 0j

    def __post_init__(self):
        n = self.N + 1
        for name, length in (("powers", n), ("diag", n), ("sub", n - 1),
                             ("sup", n - 1)):
            arr = np.asarray(getattr(self, name), dtype=complex)
            if arr.shape != (length,):
                raise ValueError(f"{name} must have length {length}")
            object.__setattr__(self, name, arr)
        s2 = np.asarray(self.sup2, dtype=complex)
        if len(s2) == 0:
            s2 = np.zeros(max(n - 2, 0), complex)
        if s2.shape != (max(n - 2, 0),):
            raise ValueError(f"sup2 must have length {max(n - 2, 0)}")
        object.__setattr__(self, "sup2", s2)
        object.__setattr__(self, "shift", complex(self.shift))

    @property
    def size(self) -> int:
        return self.N + 1

    @property
    def is_tridiagonal(self) -> bool:
        return not np.any(self.sup2)

    def dense(self) -> np.ndarray:
        n = self.size
        m = np.zeros((n, n), dtype=complex)
        idx = np.arange(n)
        m[idx, idx] = self.diag
        if n > 1:
            m[idx[1:], idx[:-1]] = self.sub
            m[idx[:-1], idx[1:]] = self.sup
        if n > 2:
            m[idx[:-2], idx[2:]] = self.sup2
        return m

    def norm_inf(self) -> float:
        return float(np.max(np.sum(np.abs(self.dense()), axis=1)))

    def reversed(self) -> "InvariantMatrix":
        """Same operator in the reversed basis ordering."""
        if np.any(self.sup2):
            raise ValueError("reversal is only defined for tridiagonal matrices")
        return InvariantMatrix(self.N, self.powers[::-1], self.sup[::-1],
                               self.diag[::-1], self.sub[::-1], shift=self.shift)


@dataclass(frozen=True)
class QuasiPolynomial:
    """``z**tau2 * sum_k coeffs[k] z**k`` with eigenvalue ``-a8 = eigen``."""

    tau2: complex
    coeffs: np.ndarray
    eigen: complex
    residual_max: float = float("nan")
    truncation_max: float = float("nan")
    verified: bool = False

    def __post_init__(self):
        object.__setattr__(self, "tau2", complex(self.tau2))
        object.__setattr__(self, "eigen", complex(self.eigen))
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=complex))

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        return z ** self.tau2 * np.polyval(self.coeffs[::-1], z)


def _part(u, v, w, p):
    return u * p * (p - 1) + v * p + w


def build_invariant_matrix(c: GenericCoefficients, sigma, tau, N: int,
                           tol: Tolerances = DEFAULT) -> InvariantMatrix:
    """Matrix of ``H - a8`` on ``z**(2 tau + k)``, ``k = 0 ... N``.

    Column ``k`` holds the expansion of ``(H - a8) z**(2 tau + k)``.

    Raises
    ------
    ValueError
        If ``(sigma, tau, N)`` is not a QES instance, or if ``a3 != 0`` and
        the request is not the singlet ``tau = 0, N = 0``.
    ClosureError
        If the raising image of the top monomial or the lowering image of
        the bottom one does not vanish.
    """
    sigma, tau = complex(sigma), complex(tau)
    if N < 0 or level_of(2 * (sigma - tau), tol) != N:
        raise ValueError(f"(sigma={sigma}, tau={tau}) is not an instance with N={N}")
    has_a3 = not c.is_zero("a3", tol)
    if has_a3 and (N != 0 or abs(tau) > tol.consistency):
        raise ValueError("with a3 != 0 only the singlet tau = 0, N = 0 is invariant")
    p = 2 * tau + np.arange(N + 1)
    up = _part(c.a0, c.a4, c.a7, p)
    mid = _part(c.a1, c.a5, 0.0, p)
    down = _part(c.a2, c.a6, c.a9, p)
    down2 = _part(c.a3, 0.0, 0.0, p)

    scale = c.scale() * max(1.0, float(np.max(np.abs(p)))) ** 2
    leak = max(abs(up[-1]), abs(down[0]), abs(down2[0]),
               abs(down2[1]) if N >= 1 else 0.0)
    if leak > tol.closure * scale:
        raise ClosureError(
            f"span z^(2tau)..z^(2tau+{N}) leaks out (largest image {leak:.3e})")
    return InvariantMatrix(
        N=N,
        powers=p,
        sub=up[:-1],
        diag=mid,
        sup=down[1:],
        sup2=down2[2:],
        shift=c.a8,
    )


def build_from_instance(c: GenericCoefficients, inst,
                        tol: Tolerances = DEFAULT) -> InvariantMatrix:
    return build_invariant_matrix(c, inst.sigma, inst.tau, inst.N, tol)


def leading_normalized(v: np.ndarray, tol: float = 0.0) -> Optional[np.ndarray]:
    """Scale ``v`` so that its first entry above ``tol * max|v|`` equals 1."""
    v = np.asarray(v, dtype=complex)
    big = np.max(np.abs(v)) if len(v) else 0.0
    if big == 0:
        return None
    idx = int(np.argmax(np.abs(v) > tol * big))
    return v / v[idx]
