"""Pure-Python reference versions of the numerical kernels.

Every function here has a twin with the same signature in ``_kernels.pyx``.
The compiled module is preferred at import time (see ``heunqes.kernels``);
this one is the fallback and the reference the compiled one is tested against.
"""
import cmath

import numpy as np

BACKEND = "python"

_RESCALE = 1e150


def charpoly_newton(diag, offprod, lam):
    """Newton correction ``p(lam)/p'(lam)`` for ``p(x) = det(x I - T)``.

    ``T`` is tridiagonal with main diagonal ``diag`` and ``offprod[k]`` equal
    to the product of the ``(k+1, k)`` and ``(k, k+1)`` entries.  Values and
    derivatives run through the three-term recurrence together and are
    rescaled jointly, so no coefficient expansion is ever formed.

    Returns ``0j`` when ``lam`` is an exact root and ``inf`` when the
    derivative vanishes.
    """
    n = len(diag)
    f_prev, f = 0j, 1 + 0j
    g_prev, g = 0j, 0j
    for k in range(n):
        x = lam - diag[k]
        if k == 0:
            f_new = x * f
            g_new = f + x * g
        else:
            b = offprod[k - 1]
            f_new = x * f - b * f_prev
            g_new = f + x * g - b * g_prev
        f_prev, f = f, f_new
        g_prev, g = g, g_new
        m = max(abs(f), abs(g))
        if m > _RESCALE:
            f_prev /= m
            f /= m
            g_prev /= m
            g /= m
    if f == 0:
        return 0j
    if g == 0:
        return complex("inf")
    return f / g


def aberth(diag, offprod, z0, maxiter, tol):
    """Aberth-Ehrlich simultaneous iteration on the tridiagonal determinant.

    Parameters
    ----------
    diag, offprod : complex arrays
        Tridiagonal data as for :func:`charpoly_newton`.
    z0 : complex array
        Initial approximations, one per eigenvalue.  Not modified.
    maxiter : int
    tol : float
        A root is frozen once its correction is below ``tol * max(1, |z|)``.

    Returns
    -------
    z : complex ndarray
    iterations : int
    max_correction : float
        Largest correction applied in the last sweep.
    """
    z = np.array(z0, dtype=complex)
    n = len(z)
    done = np.zeros(n, dtype=bool)
    worst = float("inf")
    it = 0
    for it in range(1, maxiter + 1):
        worst = 0.0
        for i in range(n):
            if done[i]:
                continue
            ratio = charpoly_newton(diag, offprod, z[i])
            if ratio == 0:
                done[i] = True
                continue
            s = 0j
            zi = z[i]
            for j in range(n):
                if j != i:
                    dz = zi - z[j]
                    if dz != 0:
                        s += 1.0 / dz
            if cmath.isinf(ratio):
                # stationary point of p: nudge off it
                z[i] = zi + 1e-8 * max(1.0, abs(zi)) * (1 + 1j)
                worst = float("inf")
                continue
            denom = 1.0 - ratio * s
            w = ratio / denom if denom != 0 else ratio
            z[i] = zi - w
            aw = abs(w)
            if aw > worst:
                worst = aw
            if aw <= tol * max(1.0, abs(z[i])):
                done[i] = True
        if done.all():
            break
    return z, it, worst


def tridiag_solve(sub, diag, sup, rhs):
    """Solve a tridiagonal system by Gaussian elimination with partial pivoting.

    ``sub[k]`` is entry ``(k+1, k)``, ``sup[k]`` is entry ``(k, k+1)``.
    Raises ``ZeroDivisionError`` on an exactly singular pivot.
    """
    n = len(diag)
    d = [complex(v) for v in diag]
    u1 = [complex(sup[k]) if k < n - 1 else 0j for k in range(n)]
    u2 = [0j] * n
    lo = [complex(sub[k]) if k < n - 1 else 0j for k in range(n)]
    b = [complex(v) for v in rhs]
    for k in range(n - 1):
        if abs(lo[k]) > abs(d[k]):
            # swap rows k and k+1
            d[k], lo[k] = lo[k], d[k]
            nxt_d = d[k + 1]
            d[k + 1] = u1[k]
            u1[k] = nxt_d
            nxt_u = u1[k + 1] if k + 1 < n - 1 else 0j
            if k + 1 < n - 1:
                u1[k + 1] = u2[k]
            u2[k] = nxt_u
            b[k], b[k + 1] = b[k + 1], b[k]
        if d[k] == 0:
            raise ZeroDivisionError("singular pivot at row %d" % k)
        m = lo[k] / d[k]
        d[k + 1] -= m * u1[k]
        if k + 1 < n - 1:
            u1[k + 1] -= m * u2[k]
        b[k + 1] -= m * b[k]
    if d[n - 1] == 0:
        raise ZeroDivisionError("singular pivot at row %d" % (n - 1))
    x = [0j] * n
    for k in range(n - 1, -1, -1):
        acc = b[k]
        if k + 1 < n:
            acc -= u1[k] * x[k + 1]
        if k + 2 < n:
            acc -= u2[k] * x[k + 2]
        x[k] = acc / d[k]
    return np.array(x, dtype=complex)


def _part(parts, s, p):
    u = parts[s, 0]
    v = parts[s, 1]
    w = parts[s, 2]
    return u * p * (p - 1.0) + v * p + w


def series_recurrence(parts, lead, rho, n_terms, chop_from, chop_level, res_tol):
    """Frobenius coefficients from the degree-graded operator parts.

    ``parts`` is a ``(4, 3)`` complex array; row ``s`` holds ``(u, v, w)`` of
    the part that maps ``z**p`` to ``(u p (p-1) + v p + w) z**(p+1-s)``, so
    rows are the degree ``+1, 0, -1, -2`` pieces in that order.  ``lead`` is
    the row of the lowest-degree nonzero part; it fixes the recurrence
    denominator.

    Coefficients with index ``>= chop_from`` whose magnitude is at most
    ``chop_level`` times the largest head coefficient are reset to zero
    before the recurrence continues; the un-chopped values are still
    reported in ``raw``.

    Returns
    -------
    coeffs, raw : complex ndarrays of length ``n_terms``
    status : int
        ``-1`` on success, otherwise the first resonant index.
    """
    c = np.zeros(n_terms, dtype=complex)
    raw = np.zeros(n_terms, dtype=complex)
    if n_terms == 0:
        return c, raw, -1
    c[0] = 1.0
    raw[0] = 1.0
    big = 1.0
    for k in range(1, n_terms):
        num = 0j
        scale = 0.0
        for s in range(lead):
            j = k - (lead - s)
            if j < 0:
                continue
            t = c[j] * _part(parts, s, rho + j)
            num += t
            if abs(t) > scale:
                scale = abs(t)
        den = _part(parts, lead, rho + k)
        den_scale = abs(parts[lead, 0]) * (abs(rho + k) ** 2 + abs(rho + k)) \
            + abs(parts[lead, 1]) * abs(rho + k) + abs(parts[lead, 2])
        if abs(den) <= res_tol * max(den_scale, 1e-300):
            if abs(num) <= res_tol * max(scale, big):
                val = 0j
            else:
                return c, raw, k
        else:
            val = -num / den
        raw[k] = val
        if k >= chop_from and abs(val) <= chop_level * big:
            val = 0j
        c[k] = val
        if abs(val) > big and k < chop_from:
            big = abs(val)
    return c, raw, -1
