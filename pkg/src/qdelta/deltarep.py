"""Real-axis delta representation through the ε-regularised q-exponential integral.

For ``1 < q < 2`` and ``ε > 0``::

    I_ε(k) = ∫_0^inf [1 + (1-q) i (k + iε) x]**(1/(1-q)) dx
           + ∫_{-inf}^0 [1 + (1-q) i (k - iε) x]**(1/(1-q)) dx

Each half-line has the antiderivative
``[1 + (1-q) i κ x]**((2-q)/(1-q)) / ((2-q) i κ)``, which vanishes at the far
end because the exponent is negative and the base grows.  Summing the two
boundary terms at ``x = 0``::

    I_ε(k) = -1/((2-q) i (k+iε)) + 1/((2-q) i (k-iε)) = (2/(2-q)) ε / (k² + ε²)

a Lorentzian of mass ``2π/(2-q)``, i.e. ``(2π/(2-q))`` times the Poisson
kernel.  ``method="closed_form"`` evaluates that expression,
``method="quadrature"`` integrates the two half-lines numerically.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from ._format import dumps17, fmt_number, fmt_real, json_number
from .errors import DomainError, QDeltaError, QuadratureFailure
from .qcalc import check_delta_q
from .quadrature import QuadratureConfig, integrate_finite, integrate_whole_line
from .testfns import TestFunction
from .ultra import PairingResult, _antiderivative, _halfline

DEFAULT_SCHEDULE = (1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4)


@dataclass(frozen=True)
class RegularizedFamily:
    q: float
    epsilon: float

    def __post_init__(self):
        object.__setattr__(self, "q", check_delta_q(self.q))
        if not float(self.epsilon) > 0:
            raise DomainError(f"epsilon must be positive, got {self.epsilon}")
        object.__setattr__(self, "epsilon", float(self.epsilon))

    @property
    def mass(self) -> float:
        return 2.0 * math.pi / (2.0 - self.q)

    def closed_form(self, k):
        k = np.asarray(k, dtype=float)
        return kernels.lorentzian(self.q, self.epsilon, np.atleast_1d(k)).reshape(k.shape)


def regularized_integral(fam: RegularizedFamily, k, method="closed_form",
                         cfg: QuadratureConfig | None = None, *, full_output=False):
    """``I_ε(k)`` by the derived Lorentzian or by quadrature of both half-lines."""
    k = float(k)
    q, eps = fam.q, fam.epsilon
    if method == "closed_form":
        value = float(fam.closed_form(k))
        return PairingResult(value, 0.0, 0) if full_output else value
    if method != "quadrature":
        raise ValueError(f"unknown method {method!r}")
    cfg = cfg or QuadratureConfig()
    upper = _halfline(q, complex(k, eps), cfg)
    # x -> -x maps the lower half-line onto [0, inf) with κ = -k + iε,
    # whose integrand is the complex conjugate of the upper one.
    lower = _halfline(q, complex(-k, eps), cfg)
    res = upper + lower
    v = complex(res.value)
    if abs(v.imag) > 1e-10 * abs(v) + 1e-300:
        raise QuadratureFailure(f"I_eps({k}) came out non-real: {v}")
    if full_output:
        return PairingResult(v.real, res.error_estimate, res.evaluations, res.converged)
    return v.real


def total_mass(fam: RegularizedFamily, cfg: QuadratureConfig | None = None, *,
               full_output=False):
    """``∫ I_ε(k) dk`` by quadrature; equals ``2π/(2-q)`` for every ε."""
    cfg = cfg or QuadratureConfig()
    res = integrate_whole_line(fam.closed_form, cfg, points=[-fam.epsilon, fam.epsilon])
    return PairingResult.from_integration(res) if full_output else res.value


def _pair_breaks(eps, radius):
    pts = [0.0]
    s = eps
    while s < radius:
        pts += [-s, s]
        s *= 10.0
    return pts


def delta_pair(fam: RegularizedFamily, phi: TestFunction,
               cfg: QuadratureConfig | None = None) -> PairingResult:
    """``⟨I_ε, φ⟩ = ∫ I_ε(k) φ(k) dk`` on the real line.

    The range is cut at ``|k| <= R + 10ε`` where ``R`` is where the
    Gaussian factor of ``φ`` falls below the absolute tolerance; breakpoints
    at decades of ε resolve the Lorentzian peak.
    """
    cfg = cfg or QuadratureConfig()
    eps = fam.epsilon
    radius = phi.truncation_radius(cfg.abs_tol, margin=10.0 * eps)

    def integrand(k):
        v = phi.eval(k)
        if np.iscomplexobj(v) and not np.any(v.imag):
            v = v.real
        return fam.closed_form(k) * v

    res = integrate_finite(integrand, -radius, radius, cfg, points=_pair_breaks(eps, radius))
    return PairingResult.from_integration(res)


def truncated_integral(q, k, L) -> complex:
    """``∫_{-L}^{L} e_q(ikx) dx`` from the antiderivative; ``2L`` at ``k = 0``."""
    q = check_delta_q(q)
    k, L = float(k), float(L)
    if not L > 0:
        raise DomainError("L must be positive")
    if k == 0.0:
        return complex(2.0 * L)
    return complex(_antiderivative(q, k, L) - _antiderivative(q, k, -L))


@dataclass(frozen=True)
class SweepRow:
    epsilon: float
    value: complex | float | None
    abs_error: float | None
    slope_running: float | None
    evaluations: int
    converged: bool
    message: str = ""


CSV_COLUMNS = ("epsilon", "value", "abs_error", "slope_running", "evaluations", "converged")


@dataclass(frozen=True)
class SweepTable:
    q: float
    testfn: str
    limit: complex | float
    rows: tuple[SweepRow, ...] = field(default_factory=tuple)

    @property
    def slope(self):
        """Least-squares slope of log(abs_error) against log(ε) over converged rows."""
        good = [r for r in self.rows if r.converged and r.abs_error and r.abs_error > 0]
        if len(good) < 2:
            return None
        x = np.log([r.epsilon for r in good])
        y = np.log([r.abs_error for r in good])
        return float(np.polyfit(x, y, 1)[0])

    @property
    def converged_fraction(self):
        return sum(r.converged for r in self.rows) / len(self.rows) if self.rows else 0.0

    @property
    def monotone_tail(self):
        """True when abs_error never increases over the second half of the schedule."""
        errs = [r.abs_error for r in self.rows if r.converged]
        tail = errs[len(errs) // 2:]
        return all(b <= a for a, b in zip(tail, tail[1:]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow([fmt_real(r.epsilon), fmt_number(r.value), fmt_real(r.abs_error),
                        fmt_real(r.slope_running), r.evaluations, str(r.converged).lower()])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "q": json_number(self.q),
            "testfn": self.testfn,
            "limit": json_number(self.limit),
            "slope": json_number(self.slope),
            "rows": [
                {
                    "epsilon": json_number(r.epsilon),
                    "value": json_number(r.value),
                    "abs_error": json_number(r.abs_error),
                    "slope_running": json_number(r.slope_running),
                    "evaluations": r.evaluations,
                    "converged": r.converged,
                    "message": r.message,
                }
                for r in self.rows
            ],
        }

    def to_json(self) -> str:
        return dumps17(self.to_dict()) + "\n"


def _threads():
    try:
        n = int(os.environ.get("QDELTA_THREADS", "0"))
    except ValueError:
        n = 0
    return max(1, n) if n else min(4, os.cpu_count() or 1)


def convergence_sweep(q, phi: TestFunction, eps_schedule=DEFAULT_SCHEDULE,
                      cfg: QuadratureConfig | None = None) -> SweepTable:
    """Pair ``I_ε`` with ``φ`` along a strictly decreasing ε schedule.

    A row whose quadrature fails is kept with ``converged=False``.
    """
    q = check_delta_q(q)
    eps_schedule = [float(e) for e in eps_schedule]
    if not eps_schedule:
        raise DomainError("empty epsilon schedule")
    if any(e <= 0 for e in eps_schedule) or any(b >= a for a, b in zip(eps_schedule, eps_schedule[1:])):
        raise DomainError("epsilon schedule must be positive and strictly decreasing")
    cfg = cfg or QuadratureConfig()
    limit = 2.0 * math.pi / (2.0 - q) * phi.value_at_zero

    def run(eps):
        try:
            return delta_pair(RegularizedFamily(q, eps), phi, cfg), ""
        except QDeltaError as exc:
            return None, str(exc)

    n = min(_threads(), len(eps_schedule))
    if n > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(run, eps_schedule))
    else:
        results = [run(e) for e in eps_schedule]

    rows = []
    prev = None
    for eps, (res, msg) in zip(eps_schedule, results):
        if res is None:
            rows.append(SweepRow(eps, None, None, None, 0, False, msg))
            continue
        err = abs(res.value - limit)
        slope = None
        if prev is not None and err > 0 and prev[1] > 0:
            slope = math.log(prev[1] / err) / math.log(prev[0] / eps)
        rows.append(SweepRow(eps, res.value, err, slope, res.evaluations, res.converged))
        prev = (eps, err)
    label = phi.label
    return SweepTable(q, label, limit, tuple(rows))
