"""Adaptive Gauss-Kronrod integration.

Integrands are vectorised callables: they receive a 1-D ``numpy`` array of
abscissae and return an array of the same length (real or complex).  A
scalar return value is broadcast, so ``lambda x: 1.0`` is accepted.

Every routine returns an :class:`IntegrationResult`.  Unbounded ranges are
split into a finite part plus a tail handled by the configured
``tail_strategy``:

``AnalyticTail(tail, split)``
    integrate ``[a, a + split]`` numerically and add ``tail(a + split)``,
    the caller's closed form for the remainder.
``ExponentialMap()``
    substitute ``x = a + exp(s)``; algebraic decay and algebraic endpoint
    singularities both become exponential decay in ``s``, and the ``s``
    range is truncated by a decay probe.
``Truncate(cutoff)``
    integrate ``[a, a + cutoff]`` and drop the rest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from . import kernels
from ._rules import NODES
from .errors import NonFiniteIntegrand, QuadratureFailure, TailDivergence

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class AnalyticTail:
    tail: Callable[[float], complex]
    split: float = 1.0

    def __post_init__(self):
        if not self.split > 0:
            raise ValueError("AnalyticTail.split must be positive")


@dataclass(frozen=True)
class ExponentialMap:
    max_log: float = 700.0


@dataclass(frozen=True)
class Truncate:
    cutoff: float

    def __post_init__(self):
        if not self.cutoff > 0:
            raise ValueError("Truncate.cutoff must be positive")


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_subdivisions: int = 10_000
    tail_strategy: AnalyticTail | ExponentialMap | Truncate = field(default_factory=ExponentialMap)

    def __post_init__(self):
        if not self.abs_tol > 0 or not self.rel_tol > 0:
            raise ValueError("abs_tol and rel_tol must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")

    def with_(self, **changes) -> "QuadratureConfig":
        return replace(self, **changes)


@dataclass(frozen=True)
class IntegrationResult:
    value: complex
    error_estimate: float
    evaluations: int
    converged: bool

    def __add__(self, other: "IntegrationResult") -> "IntegrationResult":
        return IntegrationResult(
            self.value + other.value,
            self.error_estimate + other.error_estimate,
            self.evaluations + other.evaluations,
            self.converged and other.converged,
        )

    def __sub__(self, other: "IntegrationResult") -> "IntegrationResult":
        return self + other.scaled(-1.0)

    def scaled(self, c) -> "IntegrationResult":
        return IntegrationResult(self.value * c, self.error_estimate * abs(c),
                                 self.evaluations, self.converged)

    def shifted(self, v, err=0.0) -> "IntegrationResult":
        return IntegrationResult(self.value + v, self.error_estimate + err,
                                 self.evaluations, self.converged)


DEFAULT_CONFIG = QuadratureConfig()


def _call(f, x):
    y = np.asarray(f(x))
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape)
    return y


def _panels(g, lo, hi):
    c = 0.5 * (lo + hi)
    h = 0.5 * (hi - lo)
    x = (c[:, None] + h[:, None] * NODES).ravel()
    fv = _call(g, x)
    if not np.all(np.isfinite(fv)):
        bad = x[~np.isfinite(fv)][0]
        raise NonFiniteIntegrand(f"integrand is not finite at {bad!r}")
    return kernels.gk15_reduce(fv.reshape(len(lo), 15), h)


def _adaptive(g, breaks, cfg, abs_tol, strict):
    lo = np.asarray(breaks[:-1], dtype=float)
    hi = np.asarray(breaks[1:], dtype=float)
    k, gs, a = _panels(g, lo, hi)
    evals = 15 * len(lo)
    while True:
        err = np.abs(k - gs) + 50.0 * _EPS * a
        total = complex(k.sum()) if np.iscomplexobj(k) else float(k.sum())
        etot = float(err.sum())
        tol = max(abs_tol, cfg.rel_tol * abs(total))
        if etot <= tol:
            return IntegrationResult(total, etot, evals, True)
        n = len(lo)
        room = cfg.max_subdivisions - n
        sel = np.flatnonzero(err > tol / n)
        if room > 0 and len(sel) > room:
            sel = np.sort(sel[np.argsort(-err[sel], kind="stable")[:room]])
        mid = 0.5 * (lo[sel] + hi[sel])
        if room <= 0 or np.any((mid <= lo[sel]) | (mid >= hi[sel])):
            if strict:
                why = "subdivision budget" if room <= 0 else "interval resolution"
                raise QuadratureFailure(
                    f"{why} exhausted: estimate {etot:.3e} > tolerance {tol:.3e}"
                )
            return IntegrationResult(total, etot, evals, False)
        new_lo = np.concatenate([lo[sel], mid])
        new_hi = np.concatenate([mid, hi[sel]])
        k2, g2, a2 = _panels(g, new_lo, new_hi)
        evals += 15 * len(new_lo)
        keep = np.ones(n, dtype=bool)
        keep[sel] = False
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        k = np.concatenate([k[keep], k2])
        gs = np.concatenate([gs[keep], g2])
        a = np.concatenate([a[keep], a2])
        order = np.argsort(lo, kind="stable")
        lo, hi, k, gs, a = lo[order], hi[order], k[order], gs[order], a[order]


def _breaks(a, b, points, panels=4):
    pts = [] if points is None else [p for p in points if a < p < b]
    base = list(np.linspace(a, b, panels + 1))
    return np.unique(np.array(base + pts, dtype=float))


def _power_map(f, a, mu, sign):
    # x = a + sign * u**(1/mu); absorbs (x - a)**(mu - 1) at the endpoint.
    inv = 1.0 / mu

    def g(u):
        return _call(f, a + sign * u**inv) * (inv * u ** (inv - 1.0))

    return g


def integrate_finite(f, a, b, cfg: QuadratureConfig | None = None, *, points=None,
                     left_mu=None, right_mu=None, strict=True) -> IntegrationResult:
    """Integrate ``f`` over ``[a, b]``.

    ``left_mu`` / ``right_mu`` declare an endpoint behaviour
    ``|x - endpoint|**(mu - 1)``; the range next to that endpoint is mapped
    through ``x = endpoint ± u**(1/mu)`` so the transformed integrand is
    regular.  ``points`` are interior breakpoints (kinks, narrow peaks).
    """
    cfg = cfg or DEFAULT_CONFIG
    a, b = float(a), float(b)
    if not a < b:
        raise ValueError(f"integrate_finite needs a < b, got [{a}, {b}]")
    for mu in (left_mu, right_mu):
        if mu is not None and not mu > 0:
            raise ValueError("endpoint exponent mu must be positive")
    if left_mu is None and right_mu is None:
        return _adaptive(f, _breaks(a, b, points), cfg, cfg.abs_tol, strict)

    m = 0.5 * (a + b)
    pts = [] if points is None else list(points)
    pieces = []
    for lo, hi, mu, end, sign in ((a, m, left_mu, a, 1.0), (m, b, right_mu, b, -1.0)):
        inner = [p for p in pts if lo < p < hi]
        if mu is None:
            br = _breaks(lo, hi, inner, panels=2)
            pieces.append(_adaptive(f, br, cfg, 0.5 * cfg.abs_tol, strict))
            continue
        g = _power_map(f, end, mu, sign)
        umax = (hi - lo) ** mu
        mapped = [abs(p - end) ** mu for p in inner]
        br = _breaks(0.0, umax, mapped, panels=2)
        pieces.append(_adaptive(g, br, cfg, 0.5 * cfg.abs_tol, strict))
    return pieces[0] + pieces[1]


def _probe(g, start, direction, target, max_log):
    """Walk away from ``start`` until the mapped integrand's remainder is tiny."""
    v_prev = abs(complex(_call(g, np.array([start]))[0]))
    step = 1.0
    last = start
    while True:
        s = start + direction * step
        if abs(s) > max_log:
            raise TailDivergence(f"no decay found within |s| <= {max_log}")
        v = abs(complex(_call(g, np.array([s]))[0]))
        if not math.isfinite(v):
            raise TailDivergence(f"integrand not finite at mapped point s={s}")
        if v == 0.0:
            return s, 0.0
        if v < v_prev:
            rate = math.log(v_prev / v) / abs(s - last)
            remainder = v / rate
            if remainder < target:
                return s, remainder
        v_prev, last = v, s
        step *= 2.0


def _exp_map(f, a, cfg, points, abs_tol, strict):
    def g(s):
        es = np.exp(s)
        return _call(f, a + es) * es

    max_log = cfg.tail_strategy.max_log if isinstance(cfg.tail_strategy, ExponentialMap) else 700.0
    target = 0.01 * abs_tol
    s_hi, r_hi = _probe(g, 0.0, 1.0, target, max_log)
    s_lo, r_lo = _probe(g, 0.0, -1.0, target, max_log)
    n = int(min(128, max(4, math.ceil((s_hi - s_lo) / 2.0))))
    mapped = [] if points is None else [math.log(p - a) for p in points if p > a]
    br = np.unique(np.concatenate([np.linspace(s_lo, s_hi, n + 1),
                                   [m for m in mapped if s_lo < m < s_hi]]))
    res = _adaptive(g, br, cfg, abs_tol, strict)
    return IntegrationResult(res.value, res.error_estimate + r_hi + r_lo,
                             res.evaluations + 4, res.converged)


def integrate_semi_infinite(f, a, cfg: QuadratureConfig | None = None, *, points=None,
                            left_mu=None, strict=True, _abs_tol=None) -> IntegrationResult:
    """Integrate ``f`` over ``[a, inf)`` using ``cfg.tail_strategy`` beyond the finite part."""
    cfg = cfg or DEFAULT_CONFIG
    a = float(a)
    abs_tol = cfg.abs_tol if _abs_tol is None else _abs_tol
    strategy = cfg.tail_strategy
    sub = cfg.with_(abs_tol=abs_tol)
    if isinstance(strategy, AnalyticTail):
        x = a + strategy.split
        finite = integrate_finite(f, a, x, sub, points=points, left_mu=left_mu, strict=strict)
        tail = complex(strategy.tail(x))
        if not (math.isfinite(tail.real) and math.isfinite(tail.imag)):
            raise TailDivergence(f"analytic tail is not finite at X={x}")
        if isinstance(finite.value, float) and tail.imag == 0.0:
            tail = tail.real
        return finite.shifted(tail)
    if isinstance(strategy, Truncate):
        return integrate_finite(f, a, a + strategy.cutoff, sub, points=points,
                                left_mu=left_mu, strict=strict)
    if left_mu is not None and left_mu <= 0:
        raise ValueError("endpoint exponent mu must be positive")
    return _exp_map(f, a, cfg, points, abs_tol, strict)


def integrate_whole_line(f, cfg: QuadratureConfig | None = None, *, center=0.0, points=None,
                         strict=True) -> IntegrationResult:
    """Integrate ``f`` over the real line as two reflected half-lines about ``center``."""
    cfg = cfg or DEFAULT_CONFIG
    if isinstance(cfg.tail_strategy, AnalyticTail):
        raise ValueError("AnalyticTail is one-sided; use ExponentialMap or Truncate on a line")
    c = float(center)
    pts = [] if points is None else list(points)
    half = 0.5 * cfg.abs_tol
    right = integrate_semi_infinite(lambda t: f(c + t), 0.0, cfg,
                                    points=[p - c for p in pts if p > c],
                                    strict=strict, _abs_tol=half)
    left = integrate_semi_infinite(lambda t: f(c - t), 0.0, cfg,
                                   points=[c - p for p in pts if p < c],
                                   strict=strict, _abs_tol=half)
    return right + left


def integrate_horizontal_line(f, h, cfg: QuadratureConfig | None = None, *, points=None,
                              strict=True) -> IntegrationResult:
    """Integrate ``z -> f(z)`` along ``Im z = h`` from left to right.

    ``f`` takes complex arguments; the result is ``∫ f(t + i h) dt`` with
    ``dz = dt``.  ``points`` are real parts of interior breakpoints.
    """
    h = float(h)
    return integrate_whole_line(lambda t: f(t + 1j * h), cfg, points=points, strict=strict)
