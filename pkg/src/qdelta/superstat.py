"""Superstatistics: Boltzmann factors averaged over a fluctuating inverse temperature.

Two measures are offered.  ``"haar"`` integrates ``f(β) e^{-βE} dβ/β``
literally as the multiplicative convolution; ``"plain"`` integrates
``f(β) e^{-βE} dβ``, the usual Laplace mixture.  Only the plain form turns
a Gamma mixing density into a q-exponential exactly:

    ∫ Gamma(β; n, b) e^{-βE} dβ = (1 + E/b)^{-n} = e_q(-β_q E),
    q = 1 + 1/n,  β_q = n/b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.special import gammaln

from .errors import DomainError, SingularOrigin
from .qcalc import q_exp
from .quadrature import QuadratureConfig, integrate_semi_infinite

WEIGHT_MODES = ("plain", "haar")


@dataclass(frozen=True)
class MixingDensity:
    pdf: Callable[[np.ndarray], np.ndarray]
    label: str = ""
    params: dict = field(default_factory=dict)
    sampler: Callable[[np.random.Generator, int], np.ndarray] | None = None
    points: tuple[float, ...] = ()

    def __call__(self, beta):
        return self.pdf(beta)


def gamma_mixing(shape, rate) -> MixingDensity:
    """Gamma density in shape-rate form, ``b^n β^{n-1} e^{-bβ} / Γ(n)``."""
    n, b = float(shape), float(rate)
    if not (n > 0 and b > 0):
        raise DomainError("Gamma shape and rate must be positive")
    lognorm = n * math.log(b) - gammaln(n)

    def pdf(beta):
        beta = np.asarray(beta, dtype=float)
        pos = beta > 0
        safe = np.where(pos, beta, 1.0)
        return np.where(pos, np.exp(lognorm + (n - 1.0) * np.log(safe) - b * safe), 0.0)

    def sampler(rng, size):
        return rng.gamma(n, 1.0 / b, size)

    mean, sd = n / b, math.sqrt(n) / b
    pts = tuple(p for p in (mean - 4 * sd, mean - sd, mean, mean + sd, mean + 4 * sd) if p > 0)
    return MixingDensity(pdf, f"gamma(n={n:g},b={b:g})", {"shape": n, "rate": b}, sampler, pts)


def _origin_exponent(f: MixingDensity):
    # local power law pdf(β) ~ β^s near 0, read off two small probes
    b1, b2 = 1e-10, 1e-8
    v1, v2 = float(f.pdf(np.array([b1]))[0]), float(f.pdf(np.array([b2]))[0])
    if v1 <= 0 or v2 <= 0:
        return math.inf
    return math.log(v2 / v1) / math.log(b2 / b1)


def generalized_factor(f: MixingDensity, E, weight_mode="plain",
                       cfg: QuadratureConfig | None = None, *, full_output=False):
    """Mixture of Boltzmann factors ``e^{-βE}`` over ``f``.

    ``weight_mode="haar"`` uses the measure ``dβ/β``; ``"plain"`` uses ``dβ``.
    With ``full_output=True`` a dict carrying the value, error estimate and
    the mode is returned.
    """
    E = float(E)
    if not E >= 0:
        raise DomainError("energy E must be nonnegative")
    if weight_mode not in WEIGHT_MODES:
        raise DomainError(f"weight_mode must be one of {WEIGHT_MODES}")
    cfg = cfg or QuadratureConfig()
    if weight_mode == "haar":
        if _origin_exponent(f) - 1.0 <= -1.0 + 1e-6:
            raise SingularOrigin("pdf(beta)/beta is not integrable at beta = 0")

        def integrand(beta):
            return f.pdf(beta) * np.exp(-beta * E) / beta
    else:
        def integrand(beta):
            return f.pdf(beta) * np.exp(-beta * E)

    res = integrate_semi_infinite(integrand, 0.0, cfg, points=f.points)
    if full_output:
        return {"value": res.value, "error_estimate": res.error_estimate,
                "evaluations": res.evaluations, "weight_mode": weight_mode}
    return res.value


def qexp_mapping(n, b):
    """``(q, beta_q)`` with ``(1 + E/b)^{-n} = e_q(-beta_q E)``."""
    n, b = float(n), float(b)
    return 1.0 + 1.0 / n, n / b


@dataclass(frozen=True)
class GammaMatchReport:
    n: float
    b: float
    q: float
    beta_q: float
    energies: tuple[float, ...]
    factor: tuple[float, ...]
    closed_form: tuple[float, ...]
    q_exponential: tuple[float, ...]
    max_rel_dev_quadrature: float
    max_rel_dev_qexp: float
    weight_mode: str = "plain"

    @property
    def max_dev(self):
        return max(self.max_rel_dev_quadrature, self.max_rel_dev_qexp)

    def passed(self, tol=1e-10):
        return self.max_dev < tol


def gamma_matches_qexp(n, b, E_grid: Sequence[float],
                       cfg: QuadratureConfig | None = None) -> GammaMatchReport:
    """Compare the plain Gamma mixture against ``(1+E/b)^{-n}`` and ``e_q(-β_q E)``."""
    n, b = float(n), float(b)
    if not n > 1:
        raise DomainError("n > 1 is required so that q = 1 + 1/n lies in (1, 2)")
    # factors reach ~1e-14 on the grid, so only a relative tolerance is meaningful
    cfg = cfg or QuadratureConfig(abs_tol=1e-300, rel_tol=1e-13)
    q, beta_q = qexp_mapping(n, b)
    f = gamma_mixing(n, b)
    es = tuple(float(e) for e in E_grid)
    fac = tuple(generalized_factor(f, e, "plain", cfg) for e in es)
    closed = tuple((1.0 + e / b) ** (-n) for e in es)
    qe = tuple(q_exp(q, -beta_q * e) for e in es)
    dev_quad = max((abs(a - c) / c for a, c in zip(fac, closed)), default=0.0)
    dev_q = max((abs(a - c) / c for a, c in zip(qe, closed)), default=0.0)
    return GammaMatchReport(n, b, q, beta_q, es, fac, closed, qe, dev_quad, dev_q)


def mc_generalized_factor(f: MixingDensity, E, samples: int, seed: int, chunk=1 << 18):
    """Monte Carlo mean of ``e^{-βE}`` over draws from ``f``; returns ``(estimate, stderr)``.

    Draws come from ``numpy``'s PCG64 seeded with ``seed`` in fixed-size
    chunks, so the output depends only on ``(seed, samples)``.
    """
    if f.sampler is None:
        raise DomainError("mixing density has no sampler")
    samples = int(samples)
    if samples < 100:
        raise DomainError("at least 100 samples are required")
    E = float(E)
    rng = np.random.Generator(np.random.PCG64(seed))
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        w = np.exp(-f.sampler(rng, m) * E)
        total += float(np.sum(w))
        total_sq += float(np.sum(w * w))
        done += m
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0) * samples / (samples - 1)
    return mean, math.sqrt(var / samples)
