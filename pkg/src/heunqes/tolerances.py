"""Central numerical tolerances.

Every zero test and acceptance threshold in the package reads from a
:class:`Tolerances` instance; :data:`DEFAULT` is used when none is passed.
The CLI builds its own instance from ``--tol`` and the job file.
"""
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    #: coefficient zero tests (branch selection in algebraization)
    coeff_zero: float = 1e-12
    #: exponent equality when merging generalized monomials
    exponent_merge: float = 1e-9
    #: trailing-coefficient trimming of generalized polynomials
    trim: float = 0.0
    #: self-consistency of (sigma, tau) with the coefficients
    consistency: float = 1e-9
    #: half-integer detection of 2(sigma - tau)
    half_integer: float = 1e-9
    #: discriminant below which two roots are reported as one double root
    double_root: float = 1e-12
    #: closure of the invariant subspace, relative to the operator scale
    closure: float = 1e-9
    #: operator residual of a verified quasi-polynomial (relative)
    residual: float = 1e-9
    #: Frobenius tail of a verified quasi-polynomial (relative)
    truncation: float = 1e-8
    #: eigenpair residual, relative to max(1, ||M||_inf)
    eigen_residual: float = 1e-9
    #: Aberth per-root stopping rule
    aberth_tol: float = 4e-16
    aberth_maxiter: int = 300
    aberth_restarts: int = 4
    #: relative size under which a recurrence denominator counts as zero
    resonance: float = 1e-11

    def with_overrides(self, **kw):
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


DEFAULT = Tolerances()
