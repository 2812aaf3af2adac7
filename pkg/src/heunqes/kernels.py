"""Backend selection for the hot numerical kernels.

The Cython extension ``heunqes._kernels`` is used when it has been built;
otherwise the pure-Python ``heunqes._kernels_py`` is loaded.  Setting the
environment variable ``HEUNQES_PURE_PYTHON=1`` forces the fallback.
"""
import os

if os.environ.get("HEUNQES_PURE_PYTHON", "") not in ("", "0"):
    from heunqes import _kernels_py as _impl
else:
    try:
        from heunqes import _kernels as _impl
    except ImportError:  # extension not built
        from heunqes import _kernels_py as _impl

BACKEND = _impl.BACKEND
charpoly_newton = _impl.charpoly_newton
aberth = _impl.aberth
tridiag_solve = _impl.tridiag_solve
series_recurrence = _impl.series_recurrence

__all__ = ["BACKEND", "charpoly_newton", "aberth", "tridiag_solve", "series_recurrence"]
