"""Hot-kernel dispatch.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
numpy twins in ``_kernels_py`` take over.  Setting ``QDELTA_PURE_PYTHON=1``
forces the fallback.  Both backends expose the same four functions.
"""

import os

from . import _kernels_py

_FORCE_PY = os.environ.get("QDELTA_PURE_PYTHON", "").strip() not in ("", "0")

try:
    if _FORCE_PY:
        raise ImportError("pure-python backend requested")
    from . import _ckernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _kernels_py
    BACKEND = "python"


def get_backend(name):
    """Return the kernel module for ``"cython"`` or ``"python"``."""
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


qexp_real = _impl.qexp_real
qexp_complex = _impl.qexp_complex
lorentzian = _impl.lorentzian
gk15_reduce = _impl.gk15_reduce

__all__ = ["BACKEND", "get_backend", "qexp_real", "qexp_complex", "lorentzian", "gk15_reduce"]
