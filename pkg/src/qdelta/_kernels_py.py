"""Pure numpy implementations of the hot kernels.

Used when the compiled extension is unavailable or when
``QDELTA_PURE_PYTHON`` is set.  Every function here has a twin with the
same signature in ``_ckernels.pyx``.
"""

import numpy as np

from ._rules import GAUSS_WEIGHTS, KRONROD_WEIGHTS
from .errors import BranchCutError


def qexp_real(q, x):
    x = np.ascontiguousarray(x, dtype=np.float64)
    if q == 1.0:
        return np.exp(x)
    out = np.zeros_like(x)
    # huge |x| overflows to inf, which the formula maps to its limit like the C twin
    with np.errstate(over="ignore"):
        y = (1.0 - q) * x
        alive = y > -1.0
        out[alive] = np.exp(np.log1p(y[alive]) / (1.0 - q))
    return out


def qexp_complex(q, z):
    z = np.ascontiguousarray(z, dtype=np.complex128)
    if q == 1.0:
        return np.exp(z)
    base = 1.0 + (1.0 - q) * z
    if np.any((base.imag == 0.0) & (base.real <= 0.0)):
        raise BranchCutError("base 1+(1-q)z on the closed negative real axis")
    w = 1.0 / (1.0 - q)
    mod = np.log(np.hypot(base.real, base.imag))
    arg = np.arctan2(base.imag, base.real)
    return np.exp(w * mod) * (np.cos(w * arg) + 1j * np.sin(w * arg))


def lorentzian(q, eps, k):
    k = np.ascontiguousarray(k, dtype=np.float64)
    return 2.0 * eps / ((2.0 - q) * (k * k + eps * eps))


def gk15_reduce(fvals, halfw):
    """Return (kronrod, gauss, kronrod_of_abs) per panel."""
    halfw = np.ascontiguousarray(halfw, dtype=np.float64)
    if np.iscomplexobj(fvals):
        fvals = np.ascontiguousarray(fvals, dtype=np.complex128)
        k = (fvals.real @ KRONROD_WEIGHTS + 1j * (fvals.imag @ KRONROD_WEIGHTS)) * halfw
        g = (fvals.real @ GAUSS_WEIGHTS + 1j * (fvals.imag @ GAUSS_WEIGHTS)) * halfw
    else:
        fvals = np.ascontiguousarray(fvals, dtype=np.float64)
        k = (fvals @ KRONROD_WEIGHTS) * halfw
        g = (fvals @ GAUSS_WEIGHTS) * halfw
    a = (np.abs(fvals) @ KRONROD_WEIGHTS) * halfw
    return k, g, a
