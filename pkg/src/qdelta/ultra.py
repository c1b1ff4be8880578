"""Complex-plane side of the delta representation.

``E_q(ikx)`` is the q-exponential cut along the real ``k`` axis: for
``Im k > 0`` it keeps the half-line ``x >= 0``, for ``Im k < 0`` it keeps
``x <= 0`` with a minus sign.  Its ``x``-integral ``F_q(k)`` equals
``-1/((2-q) i k)`` on both half-planes, and pairing ``F_q`` with a test
function along the contour ``Γ`` (top line left to right at ``+zeta``,
bottom line right to left at ``-zeta``) returns ``2π/(2-q) φ(0)``.

Heaviside convention: ``H(0) = 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .errors import BranchCutError, DomainError
from .qcalc import check_delta_q
from .quadrature import (
    AnalyticTail,
    IntegrationResult,
    QuadratureConfig,
    integrate_finite,
    integrate_horizontal_line,
    integrate_semi_infinite,
    integrate_whole_line,
)
from .testfns import TestFunction, cauchy_riemann_residual


@dataclass(frozen=True)
class UltraRep:
    """Analytic representative off the strip ``|Im k| <= strip_halfwidth``."""

    eval: Callable[[np.ndarray], np.ndarray]
    strip_halfwidth: float = 0.0
    power_bound_degree: int = 0
    label: str = ""

    def __call__(self, k):
        return self.eval(k)

    def plus_polynomial(self, coeffs: Sequence[complex]) -> "UltraRep":
        """``F + P`` with ``P`` given by ascending coefficients."""
        desc = np.array([complex(c) for c in coeffs][::-1])
        base = self.eval
        deg = max((i for i, c in enumerate(coeffs) if c != 0), default=0)
        return UltraRep(lambda k: base(k) + np.polyval(desc, np.asarray(k, dtype=complex)),
                        self.strip_halfwidth, max(self.power_bound_degree, deg),
                        f"{self.label}+poly")


@dataclass(frozen=True)
class ContourSpec:
    zeta: float = 1.0

    def __post_init__(self):
        if not self.zeta > 0:
            raise DomainError("contour height zeta must be positive")


@dataclass(frozen=True)
class PairingResult:
    value: complex
    error_estimate: float
    evaluations: int
    converged: bool = True

    @classmethod
    def from_integration(cls, r: IntegrationResult) -> "PairingResult":
        return cls(r.value, r.error_estimate, r.evaluations, r.converged)


def _check_k(k):
    k = complex(k)
    if k.imag == 0.0:
        raise DomainError(f"k must be off the real axis, got {k}")
    return k


def eval_Eq(q, k, x):
    """``{H(x)H(Im k) - H(-x)H(-Im k)} [1 + i(1-q) k x]**(1/(1-q))``."""
    q = check_delta_q(q)
    k = _check_k(k)
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    upper = k.imag > 0
    alive = xa >= 0 if upper else xa <= 0
    out = np.zeros(xa.shape, dtype=complex)
    if np.any(alive):
        xs = xa[alive]
        # Re(base) = 1 + (q-1) Im(k) x >= 1 on the surviving half-line.
        re_base = 1.0 + (q - 1.0) * k.imag * xs
        if np.any(re_base < 1.0 - 1e-12):
            raise BranchCutError("E_q base left the half-plane Re >= 1")
        vals = kernels.qexp_complex(q, 1j * k * xs)
        out[alive] = vals if upper else -vals
    return out.item() if np.ndim(x) == 0 else out


def _antiderivative(q, kappa, x):
    # d/dx of [1 + (1-q) i kappa x]**((2-q)/(1-q)) / ((2-q) i kappa) is e_q(i kappa x)
    base = 1.0 + (1.0 - q) * 1j * kappa * x
    return np.exp((2.0 - q) / (1.0 - q) * np.log(base)) / ((2.0 - q) * 1j * kappa)


def _halfline(q, kappa, cfg, split=None):
    """``∫_0^inf e_q(i kappa x) dx`` for ``Im kappa > 0``, closed-form tail past ``split``."""
    scale = 1.0 / ((q - 1.0) * abs(kappa))
    split = 1e4 * scale if split is None else split
    tail = AnalyticTail(lambda X: -_antiderivative(q, kappa, X), split)
    return integrate_semi_infinite(
        lambda x: kernels.qexp_complex(q, 1j * kappa * x), 0.0, cfg.with_(tail_strategy=tail),
        points=[scale, 10 * scale, 100 * scale, 1000 * scale])


def integrate_Eq_over_x(q, k, cfg: QuadratureConfig | None = None, *, full_output=False):
    """Numerically integrate ``E_q(ikx)`` over the real ``x`` axis."""
    q = check_delta_q(q)
    k = _check_k(k)
    cfg = cfg or QuadratureConfig()
    if k.imag > 0:
        res = _halfline(q, k, cfg)
    else:
        # ∫_{-inf}^0 e_q(ikx) dx = ∫_0^inf e_q(-ikx) dx, then the minus from E_q
        res = _halfline(q, -k, cfg).scaled(-1.0)
    return res if full_output else res.value


def Fq_closed_form(q, k):
    """``(1/(2-q)) (-1/(i k))``, valid on both half-planes."""
    q = check_delta_q(q)
    k = _check_k(k)
    return -1.0 / ((2.0 - q) * 1j * k)


def fq_rep(q) -> UltraRep:
    q = check_delta_q(q)
    c = 1j / (2.0 - q)
    return UltraRep(lambda k: c / np.asarray(k, dtype=complex), 0.0, 0, f"Fq(q={q:g})")


def dirac_rep() -> UltraRep:
    """``-1/(2πik)``, whose contour pairing returns ``φ(0)``."""
    c = -1.0 / (2j * math.pi)
    return UltraRep(lambda k: c / np.asarray(k, dtype=complex), 0.0, 0, "dirac")


def contour_pair(F: UltraRep, phi: TestFunction, spec: ContourSpec | None = None,
                 cfg: QuadratureConfig | None = None, *, full_output=False):
    """``∮_Γ F φ dk`` = (line integral at ``+zeta``) - (line integral at ``-zeta``)."""
    spec = spec or ContourSpec()
    cfg = cfg or QuadratureConfig()
    if not spec.zeta > F.strip_halfwidth:
        raise DomainError(f"contour height {spec.zeta} must exceed strip half-width "
                          f"{F.strip_halfwidth}")

    def integrand(z):
        return F.eval(z) * phi.eval(z)

    top = integrate_horizontal_line(integrand, spec.zeta, cfg)
    bottom = integrate_horizontal_line(integrand, -spec.zeta, cfg)
    res = top - bottom
    return PairingResult.from_integration(res) if full_output else res.value


def cauchy_transform(f, z, cfg: QuadratureConfig | None = None, *,
                     support=(-math.inf, math.inf), full_output=False):
    """``(1/(2πi)) ∫ f(t)/(t - z) dt`` for ``Im z != 0``.

    ``f`` is a real, vectorised, absolutely integrable function on
    ``support``.  The range is split at ``Re z`` when that lies inside it.
    """
    z = complex(z)
    if z.imag == 0.0:
        raise DomainError("cauchy_transform needs Im z != 0")
    cfg = cfg or QuadratureConfig()
    lo, hi = support

    def g(t):
        return f(t) / (t - z)

    if math.isinf(lo) and math.isinf(hi):
        res = integrate_whole_line(g, cfg, center=z.real)
    elif math.isinf(lo) or math.isinf(hi):
        raise DomainError("cauchy_transform supports a finite interval or the whole line")
    else:
        pts = [z.real] if lo < z.real < hi else None
        res = integrate_finite(g, lo, hi, cfg, points=pts)
    res = res.scaled(1.0 / (2j * math.pi))
    return res if full_output else res.value


def cauchy_rep(f, cfg: QuadratureConfig | None = None, *, support=(-math.inf, math.inf),
               label="cauchy") -> UltraRep:
    """Representative built from a density through the Cauchy transform."""

    def ev(k):
        ka = np.asarray(k, dtype=complex)
        flat = ka.ravel()
        out = np.array([cauchy_transform(f, kk, cfg, support=support) for kk in flat],
                       dtype=complex)
        return out.reshape(ka.shape)

    return UltraRep(ev, 0.0, 0, label)


def pseudo_poly_invariance_check(F: UltraRep, P_coeffs: Sequence[complex], phi: TestFunction,
                                 spec: ContourSpec | None = None,
                                 cfg: QuadratureConfig | None = None) -> float:
    """``|∮ (F + P) φ - ∮ F φ|``; zero for any polynomial ``P``."""
    base = contour_pair(F, phi, spec, cfg)
    shifted = contour_pair(F.plus_polynomial(P_coeffs), phi, spec, cfg)
    return abs(shifted - base)


def contour_points(spec: ContourSpec, half_width=50.0, n=2001):
    t = np.linspace(-half_width, half_width, n)
    return np.concatenate([t + 1j * spec.zeta, t - 1j * spec.zeta])


def power_bound_constant(F: UltraRep, spec: ContourSpec | None = None, points=None) -> float:
    """Smallest ``C`` with ``|F(k)| <= C |k|**p`` on the sampled contour points."""
    spec = spec or ContourSpec()
    pts = contour_points(spec) if points is None else np.asarray(points, dtype=complex)
    return float(np.max(np.abs(F.eval(pts)) / np.abs(pts) ** F.power_bound_degree))


def analyticity_residual(F: UltraRep, points) -> float:
    """Cauchy-Riemann residual of ``F`` at points off its strip."""
    pts = np.asarray(points, dtype=complex)
    if np.any(np.abs(pts.imag) <= F.strip_halfwidth):
        raise DomainError("analyticity probe points must lie off the strip")
    return cauchy_riemann_residual(F.eval, pts)
