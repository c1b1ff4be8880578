# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled twins of the functions in ``_kernels_py``."""

import numpy as np

from libc.math cimport atan2, cos, exp, fabs, hypot, log, log1p, sin, sqrt

from ._rules import GAUSS_WEIGHTS, KRONROD_WEIGHTS
from .errors import BranchCutError

cdef double _WK[15]
cdef double _WG[15]
for _j in range(15):
    _WK[_j] = KRONROD_WEIGHTS[_j]
    _WG[_j] = GAUSS_WEIGHTS[_j]


cdef inline double _cabs(double a, double b) nogil:
    # sqrt is far cheaper than hypot; fall back where squaring could over- or underflow
    cdef double m = fabs(a) if fabs(a) > fabs(b) else fabs(b)
    if 1e-150 < m < 1e150:
        return sqrt(a * a + b * b)
    return hypot(a, b)


def qexp_real(double q, x):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    shape = np.shape(x)
    out = np.empty(xv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = xv.shape[0]
    cdef double y, w
    if q == 1.0:
        for i in range(n):
            ov[i] = exp(xv[i])
        return out.reshape(shape)
    w = 1.0 / (1.0 - q)
    for i in range(n):
        y = (1.0 - q) * xv[i]
        if y > -1.0:
            ov[i] = exp(log1p(y) * w)
        else:
            ov[i] = 0.0
    return out.reshape(shape)


def qexp_complex(double q, z):
    cdef double complex[::1] zv = np.ascontiguousarray(z, dtype=np.complex128).ravel()
    shape = np.shape(z)
    out = np.empty(zv.shape[0], dtype=np.complex128)
    cdef double complex[::1] ov = out
    cdef Py_ssize_t i, n = zv.shape[0]
    cdef double br, bi, w, mod, ang, r
    if q == 1.0:
        for i in range(n):
            r = exp(zv[i].real)
            ov[i] = r * cos(zv[i].imag) + 1j * (r * sin(zv[i].imag))
        return out.reshape(shape)
    w = 1.0 / (1.0 - q)
    for i in range(n):
        br = 1.0 + (1.0 - q) * zv[i].real
        bi = (1.0 - q) * zv[i].imag
        if bi == 0.0 and br <= 0.0:
            raise BranchCutError("base 1+(1-q)z on the closed negative real axis")
        mod = w * log(_cabs(br, bi))
        ang = w * atan2(bi, br)
        r = exp(mod)
        ov[i] = r * cos(ang) + 1j * (r * sin(ang))
    return out.reshape(shape)


def lorentzian(double q, double eps, k):
    cdef double[::1] kv = np.ascontiguousarray(k, dtype=np.float64).ravel()
    shape = np.shape(k)
    out = np.empty(kv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = kv.shape[0]
    cdef double c = 2.0 * eps / (2.0 - q)
    cdef double e2 = eps * eps
    for i in range(n):
        ov[i] = c / (kv[i] * kv[i] + e2)
    return out.reshape(shape)


cdef _reduce_real(double[:, ::1] f, double[::1] h):
    cdef Py_ssize_t m = f.shape[0], i, j
    kout = np.empty(m, dtype=np.float64)
    gout = np.empty(m, dtype=np.float64)
    aout = np.empty(m, dtype=np.float64)
    cdef double[::1] kv = kout, gv = gout, av = aout
    cdef double sk, sg, sa, v
    cdef double wk[15]
    cdef double wg[15]
    for j in range(15):
        wk[j] = _WK[j]
        wg[j] = _WG[j]
    for i in range(m):
        sk = 0.0
        sg = 0.0
        sa = 0.0
        for j in range(15):
            v = f[i, j]
            sk += wk[j] * v
            sg += wg[j] * v
            sa += wk[j] * fabs(v)
        kv[i] = sk * h[i]
        gv[i] = sg * h[i]
        av[i] = sa * h[i]
    return kout, gout, aout


cdef _reduce_complex(double complex[:, ::1] f, double[::1] h):
    cdef Py_ssize_t m = f.shape[0], i, j
    kout = np.empty(m, dtype=np.complex128)
    gout = np.empty(m, dtype=np.complex128)
    aout = np.empty(m, dtype=np.float64)
    cdef double complex[::1] kv = kout, gv = gout
    cdef double[::1] av = aout
    cdef double kr, ki, gr, gi, sa, vr, vi
    cdef double wk[15]
    cdef double wg[15]
    for j in range(15):
        wk[j] = _WK[j]
        wg[j] = _WG[j]
    for i in range(m):
        kr = 0.0
        ki = 0.0
        gr = 0.0
        gi = 0.0
        sa = 0.0
        for j in range(15):
            vr = f[i, j].real
            vi = f[i, j].imag
            kr += wk[j] * vr
            ki += wk[j] * vi
            gr += wg[j] * vr
            gi += wg[j] * vi
            sa += wk[j] * _cabs(vr, vi)
        kv[i] = kr * h[i] + 1j * (ki * h[i])
        gv[i] = gr * h[i] + 1j * (gi * h[i])
        av[i] = sa * h[i]
    return kout, gout, aout


def gk15_reduce(fvals, halfw):
    """Return (kronrod, gauss, kronrod_of_abs) per panel."""
    h = np.ascontiguousarray(halfw, dtype=np.float64)
    if np.iscomplexobj(fvals):
        return _reduce_complex(np.ascontiguousarray(fvals, dtype=np.complex128), h)
    return _reduce_real(np.ascontiguousarray(fvals, dtype=np.float64), h)
