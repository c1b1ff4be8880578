"""Entire test functions ``P(z) exp(-a z**2)`` and strip-norm diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class TestFunction:
    """An entire function decaying on every horizontal line.

    ``coeffs`` are polynomial coefficients in ascending powers.
    """

    __test__ = False  # not a pytest class

    eval: Callable[[np.ndarray], np.ndarray]
    value_at_zero: complex
    decay_rate: float
    polynomial_degree: int
    label: str
    coeffs: tuple[complex, ...] = (1.0,)

    def __call__(self, z):
        return self.eval(z)

    def truncation_radius(self, abs_tol, margin=0.0):
        """Smallest ``R`` with ``|P(t)| exp(-a t**2) < 1e-2 abs_tol`` for ``|t| >= R`` (real line)."""
        a = self.decay_rate
        r = math.sqrt(math.log(1.0 / abs_tol) / a)
        scale = sum(abs(c) for c in self.coeffs) or 1.0
        while scale * max(1.0, r) ** self.polynomial_degree * math.exp(-a * r * r) > 1e-2 * abs_tol:
            r *= 1.1
        return r + margin


def _label(a, coeffs):
    def fmt(c):
        c = complex(c)
        if c.imag == 0:
            return f"{c.real:g}"
        return f"{c.real:g}{c.imag:+g}i"

    if tuple(coeffs) == (1.0,):
        return f"gauss:a={a:g}"
    return f"gauss:a={a:g},poly=" + ",".join(fmt(c) for c in coeffs)


def gaussian_family(a, poly_coeffs=(1.0,)) -> TestFunction:
    """``z -> P(z) exp(-a z**2)`` with ``P`` given by ascending coefficients."""
    a = float(a)
    if not a > 0:
        raise DomainError(f"Gaussian width parameter must be positive, got a={a}")
    coeffs = tuple(complex(c) for c in poly_coeffs) or (0j,)
    real = all(c.imag == 0 for c in coeffs)
    if real:
        coeffs = tuple(c.real for c in coeffs)
    degree = max((i for i, c in enumerate(coeffs) if c != 0), default=0)
    # numpy's polyval wants descending order
    desc = np.array(coeffs[::-1])
    trivial = coeffs == (1.0,)

    def ev(z):
        z = np.asarray(z)
        g = np.exp(-a * z * z)
        return g if trivial else np.polyval(desc, z) * g

    v0 = coeffs[0]
    return TestFunction(ev, v0, a, degree, _label(a, coeffs), coeffs)


def _parse_complex(s):
    s = s.strip()
    return complex(s.replace("i", "j")) if ("i" in s or "j" in s) else float(s)


def parse_testfn(label: str) -> TestFunction:
    """Parse ``gauss:a=1`` or ``gauss:a=0.5,poly=1,0,1`` (ascending coefficients)."""
    kind, _, rest = label.partition(":")
    if kind.strip() != "gauss":
        raise DomainError(f"unknown test function family {kind!r}")
    a = 1.0
    coeffs = [1.0]
    parts = [p for p in rest.split(",") if p.strip()] if rest else []
    i = 0
    while i < len(parts):
        key, eq, val = parts[i].partition("=")
        key = key.strip()
        if not eq:
            raise DomainError(f"bad test function field {parts[i]!r} in {label!r}")
        if key == "a":
            a = float(val)
            i += 1
        elif key == "poly":
            coeffs = [_parse_complex(val)]
            i += 1
            while i < len(parts) and "=" not in parts[i]:
                coeffs.append(_parse_complex(parts[i]))
                i += 1
        else:
            raise DomainError(f"unknown test function field {key!r}")
    return gaussian_family(a, coeffs)


def strip_norm(phi: TestFunction, p=0, n=1.0, grid_density=2001, heights=11,
               stabilize_tol=1e-12, max_doublings=30) -> float:
    """Sampled ``sup (1+|z|)**p |phi(z)|`` over the strip ``|Im z| <= n``.

    The grid is ``heights`` equally spaced horizontal lines with
    ``grid_density`` points each; the real window starts at ``[-1, 1]`` and
    doubles until the maximum changes by less than ``stabilize_tol``.  The
    result is a lower bound on the true supremum.
    """
    if p < 0 or n < 0:
        raise DomainError("strip_norm needs p >= 0 and n >= 0")
    ys = np.array([0.0]) if n == 0 else np.linspace(-n, n, heights)
    width = 1.0
    best = None
    for _ in range(max_doublings):
        t = np.linspace(-width, width, grid_density)
        z = t[None, :] + 1j * ys[:, None]
        vals = (1.0 + np.abs(z)) ** p * np.abs(phi.eval(z))
        cur = float(np.max(vals))
        if best is not None and abs(cur - best) < stabilize_tol:
            return max(cur, best)
        best = cur if best is None else max(best, cur)
        width *= 2.0
    return best


def cauchy_riemann_residual(fn, points, h=1e-5):
    """Max over ``points`` of ``|df/dx + i df/dy|`` from central differences.

    Vanishes for analytic ``fn``; scale-normalised by ``1 + max|f|``.
    """
    z = np.asarray(points, dtype=complex)
    dx = (fn(z + h) - fn(z - h)) / (2 * h)
    dy = (fn(z + 1j * h) - fn(z - 1j * h)) / (2 * h)
    scale = 1.0 + float(np.max(np.abs(fn(z))))
    return float(np.max(np.abs(dx + 1j * dy))) / scale


STANDARD_FAMILY = (
    gaussian_family(1.0),
    gaussian_family(0.5),
    gaussian_family(2.0, (1.0, 0.0, 1.0)),
    gaussian_family(1.0, (0.0, 0.0, 1.0)),
    gaussian_family(1.0, (1.0, 0.5j)),
)
