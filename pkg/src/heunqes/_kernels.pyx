# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels.  Semantics mirror ``_kernels_py`` exactly."""
import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY, sqrt

cnp.import_array()

BACKEND = "cython"

cdef double _RESCALE = 1e150


cdef inline double cabs_(double complex z) nogil:
    return sqrt(z.real * z.real + z.imag * z.imag)


cdef double complex _newton(double complex[:] diag, double complex[:] offprod,
                            double complex lam, int* status) nogil:
    cdef Py_ssize_t n = diag.shape[0]
    cdef Py_ssize_t k
    cdef double complex f_prev = 0, f = 1, g_prev = 0, g = 0
    cdef double complex x, b, f_new, g_new
    cdef double m, af, ag
    for k in range(n):
        x = lam - diag[k]
        if k == 0:
            f_new = x * f
            g_new = f + x * g
        else:
            b = offprod[k - 1]
            f_new = x * f - b * f_prev
            g_new = f + x * g - b * g_prev
        f_prev = f
        f = f_new
        g_prev = g
        g = g_new
        af = cabs_(f)
        ag = cabs_(g)
        m = af if af > ag else ag
        if m > _RESCALE:
            f_prev = f_prev / m
            f = f / m
            g_prev = g_prev / m
            g = g / m
    if f == 0:
        status[0] = 0
        return 0
    if g == 0:
        status[0] = 2
        return 0
    status[0] = 1
    return f / g


def charpoly_newton(diag, offprod, lam):
    cdef double complex[:] d = np.ascontiguousarray(diag, dtype=complex)
    cdef double complex[:] o = np.ascontiguousarray(offprod, dtype=complex)
    cdef int status = 0
    cdef double complex r = _newton(d, o, lam, &status)
    if status == 2:
        return complex("inf")
    return complex(r)


def aberth(diag, offprod, z0, int maxiter, double tol):
    cdef double complex[:] d = np.ascontiguousarray(diag, dtype=complex)
    cdef double complex[:] o = np.ascontiguousarray(offprod, dtype=complex)
    out = np.array(z0, dtype=complex)
    cdef double complex[:] z = out
    cdef Py_ssize_t n = z.shape[0]
    done_arr = np.zeros(n, dtype=np.int8)
    cdef signed char[:] done = done_arr
    cdef Py_ssize_t i, j
    cdef int it = 0, status = 0, all_done
    cdef double worst = INFINITY, aw, az
    cdef double complex ratio, s, zi, dz, denom, w
    with nogil:
        for it in range(1, maxiter + 1):
            worst = 0.0
            for i in range(n):
                if done[i]:
                    continue
                ratio = _newton(d, o, z[i], &status)
                if status == 0:
                    done[i] = 1
                    continue
                zi = z[i]
                if status == 2:
                    az = cabs_(zi)
                    z[i] = zi + 1e-8 * (az if az > 1.0 else 1.0) * (1 + 1j)
                    worst = INFINITY
                    continue
                s = 0
                for j in range(n):
                    if j != i:
                        dz = zi - z[j]
                        if dz != 0:
                            s = s + 1.0 / dz
                denom = 1.0 - ratio * s
                if denom != 0:
                    w = ratio / denom
                else:
                    w = ratio
                z[i] = zi - w
                aw = cabs_(w)
                if aw > worst:
                    worst = aw
                az = cabs_(z[i])
                if aw <= tol * (az if az > 1.0 else 1.0):
                    done[i] = 1
            all_done = 1
            for i in range(n):
                if not done[i]:
                    all_done = 0
                    break
            if all_done:
                break
    return out, it, worst


def tridiag_solve(sub, diag, sup, rhs):
    cdef Py_ssize_t n = len(diag)
    d_arr = np.array(diag, dtype=complex)
    u1_arr = np.zeros(n, dtype=complex)
    u2_arr = np.zeros(n, dtype=complex)
    lo_arr = np.zeros(n, dtype=complex)
    if n > 1:
        u1_arr[: n - 1] = sup
        lo_arr[: n - 1] = sub
    b_arr = np.array(rhs, dtype=complex)
    x_arr = np.zeros(n, dtype=complex)
    cdef double complex[:] d = d_arr
    cdef double complex[:] u1 = u1_arr
    cdef double complex[:] u2 = u2_arr
    cdef double complex[:] lo = lo_arr
    cdef double complex[:] b = b_arr
    cdef double complex[:] x = x_arr
    cdef Py_ssize_t k
    cdef double complex t, m, acc
    cdef Py_ssize_t bad = -1
    with nogil:
        for k in range(n - 1):
            if cabs_(lo[k]) > cabs_(d[k]):
                t = d[k]
                d[k] = lo[k]
                lo[k] = t
                t = d[k + 1]
                d[k + 1] = u1[k]
                u1[k] = t
                t = u1[k + 1] if k + 1 < n - 1 else 0
                if k + 1 < n - 1:
                    u1[k + 1] = u2[k]
                u2[k] = t
                t = b[k]
                b[k] = b[k + 1]
                b[k + 1] = t
            if d[k] == 0:
                bad = k
                break
            m = lo[k] / d[k]
            d[k + 1] = d[k + 1] - m * u1[k]
            if k + 1 < n - 1:
                u1[k + 1] = u1[k + 1] - m * u2[k]
            b[k + 1] = b[k + 1] - m * b[k]
        if bad < 0 and d[n - 1] == 0:
            bad = n - 1
        if bad < 0:
            for k in range(n - 1, -1, -1):
                acc = b[k]
                if k + 1 < n:
                    acc = acc - u1[k] * x[k + 1]
                if k + 2 < n:
                    acc = acc - u2[k] * x[k + 2]
                x[k] = acc / d[k]
    if bad >= 0:
        raise ZeroDivisionError("singular pivot at row %d" % bad)
    return x_arr


cdef inline double complex _part(double complex[:, :] parts, Py_ssize_t s,
                                 double complex p) nogil:
    return parts[s, 0] * p * (p - 1.0) + parts[s, 1] * p + parts[s, 2]


def series_recurrence(parts, int lead, double complex rho, Py_ssize_t n_terms,
                      Py_ssize_t chop_from, double chop_level, double res_tol):
    cdef double complex[:, :] P = np.ascontiguousarray(parts, dtype=complex)
    c_arr = np.zeros(n_terms, dtype=complex)
    raw_arr = np.zeros(n_terms, dtype=complex)
    if n_terms == 0:
        return c_arr, raw_arr, -1
    cdef double complex[:] c = c_arr
    cdef double complex[:] raw = raw_arr
    cdef Py_ssize_t k, j
    cdef int s
    cdef double big = 1.0, scale, den_scale, at, ap
    cdef double complex num, t, den, val, p
    cdef Py_ssize_t status = -1
    c[0] = 1.0
    raw[0] = 1.0
    with nogil:
        for k in range(1, n_terms):
            num = 0
            scale = 0.0
            for s in range(lead):
                j = k - (lead - s)
                if j < 0:
                    continue
                t = c[j] * _part(P, s, rho + j)
                num = num + t
                at = cabs_(t)
                if at > scale:
                    scale = at
            p = rho + k
            den = _part(P, lead, p)
            ap = cabs_(p)
            den_scale = cabs_(P[lead, 0]) * (ap * ap + ap) + cabs_(P[lead, 1]) * ap \
                + cabs_(P[lead, 2])
            if den_scale < 1e-300:
                den_scale = 1e-300
            if cabs_(den) <= res_tol * den_scale:
                if cabs_(num) <= res_tol * (scale if scale > big else big):
                    val = 0
                else:
                    status = k
                    break
            else:
                val = -num / den
            raw[k] = val
            if k >= chop_from and cabs_(val) <= chop_level * big:
                val = 0
            c[k] = val
            if k < chop_from and cabs_(val) > big:
                big = cabs_(val)
    return c_arr, raw_arr, status
