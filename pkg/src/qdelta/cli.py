"""Command-line front end.

Exit codes: 0 success, 2 invalid arguments or parameters outside a domain,
3 a computation that failed (quadrature, projection, too many failed rows).
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys

import numpy as np

from ._format import dumps17, fmt_number, fmt_real
from .deltarep import DEFAULT_SCHEDULE, RegularizedFamily, convergence_sweep, delta_pair, regularized_integral
from .errors import DomainError, QDeltaError
from .qcalc import (
    entropy_maximality_check,
    gaussian_density,
    q_exp,
    q_exp_complex,
    q_gaussian_pdf,
    shannon_entropy,
    tsallis_entropy,
    uniform_density,
)
from .quadrature import QuadratureConfig
from .superstat import gamma_matches_qexp, gamma_mixing, mc_generalized_factor
from .testfns import parse_testfn
from .ultra import (
    ContourSpec,
    Fq_closed_form,
    contour_pair,
    dirac_rep,
    eval_Eq,
    fq_rep,
    integrate_Eq_over_x,
    pseudo_poly_invariance_check,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_complex(s: str) -> complex:
    """``a+bi`` / ``bi`` / ``a`` with no spaces."""
    t = s.strip()
    if not t or " " in t:
        raise UsageError(f"bad complex number {s!r}")
    if t.endswith("i"):
        t = t[:-1] + "j"
        if t in ("j", "+j", "-j") or t[-2] in "+-":
            t = t[:-1] + "1j"
    try:
        return complex(t)
    except ValueError:
        raise UsageError(f"bad complex number {s!r}") from None


def parse_real(s: str) -> float:
    try:
        v = float(s)
    except ValueError:
        raise UsageError(f"bad number {s!r}") from None
    if math.isnan(v):
        raise UsageError("NaN is not an accepted input")
    return v


def parse_list(s: str, conv=parse_real):
    return [conv(p) for p in s.split(",") if p.strip()]


def _cvalue(v):
    v = complex(v)
    return {"re": v.real, "im": v.imag}


def _config(args) -> QuadratureConfig:
    cfg = QuadratureConfig()
    over = {}
    if args.abs_tol is not None:
        over["abs_tol"] = args.abs_tol
    if args.rel_tol is not None:
        over["rel_tol"] = args.rel_tol
    if args.max_subdivisions is not None:
        over["max_subdivisions"] = args.max_subdivisions
    if any(v is not None and not v > 0 for v in over.values()):
        raise UsageError("tolerance overrides must be positive")
    return cfg.with_(**over) if over else cfg


def _override(args):
    """Config only when the user overrode something; else the operation's own default."""
    if args.abs_tol is None and args.rel_tol is None and args.max_subdivisions is None:
        return None
    return _config(args)


def _record_csv(rec: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    flat = {k: v for k, v in rec.items() if not isinstance(v, (list, tuple))}
    w.writerow(flat.keys())
    w.writerow([_csv_cell(v) for v in flat.values()])
    return buf.getvalue()


def _csv_cell(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, dict) and set(v) == {"re", "im"}:
        return fmt_number(complex(v["re"], v["im"]))
    if isinstance(v, (float, complex)):
        return fmt_number(v)
    return "" if v is None else str(v)


def _table_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if rows:
        w.writerow(rows[0].keys())
        for r in rows:
            w.writerow([_csv_cell(v) for v in r.values()])
    return buf.getvalue()


def _emit(args, text: str):
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render(args, rec: dict, table_key=None) -> str:
    if args.format == "json":
        return dumps17(rec) + "\n"
    if table_key is not None:
        return _table_csv(rec[table_key])
    return _record_csv(rec)


# commands -----------------------------------------------------------------

def cmd_eval(args):
    fn = args.fn
    cfg = _config(args)
    q = args.q
    rec = {"fn": fn, "q": q}
    if fn == "qexp":
        if args.x is None:
            raise UsageError("--x is required for qexp")
        xs = parse_list(args.x)
        vals = [float(q_exp(q, x)) for x in xs]
        rec.update(x=xs, value=vals)
        text_vals = [fmt_real(v) for v in vals]
    elif fn == "qexpc":
        if args.z is None:
            raise UsageError("--z is required for qexpc")
        z = parse_complex(args.z)
        v = complex(q_exp_complex(q, z))
        rec.update(z=_cvalue(z), value=_cvalue(v))
        text_vals = [fmt_number(v) + ("" if v.imag else "+0i")]
    elif fn == "eq":
        if args.k is None or args.x is None:
            raise UsageError("--k and --x are required for eq")
        k = parse_complex(args.k)
        xs = parse_list(args.x)
        vals = [complex(eval_Eq(q, k, x)) for x in xs]
        rec.update(k=_cvalue(k), x=xs, value=[_cvalue(v) for v in vals])
        text_vals = [_ctext(v) for v in vals]
    elif fn == "fq":
        if args.k is None:
            raise UsageError("--k is required for fq")
        k = parse_complex(args.k)
        if args.method == "quadrature":
            res = integrate_Eq_over_x(q, k, cfg, full_output=True)
            v = complex(res.value)
            rec.update(k=_cvalue(k), method="quadrature", value=_cvalue(v),
                       error_estimate=res.error_estimate)
        else:
            v = complex(Fq_closed_form(q, k))
            rec.update(k=_cvalue(k), method="closed_form", value=_cvalue(v))
        text_vals = [_ctext(v)]
    elif fn == "ireg":
        if args.k is None or args.eps is None:
            raise UsageError("--k and --eps are required for ireg")
        k = parse_real(args.k)
        fam = RegularizedFamily(q, args.eps)
        res = regularized_integral(fam, k, args.method, cfg, full_output=True)
        rec.update(k=k, eps=args.eps, method=args.method, value=res.value,
                   error_estimate=res.error_estimate)
        text_vals = [fmt_real(res.value)]
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown function {fn}")
    if args.format == "json":
        return dumps17(rec) + "\n"
    if args.format == "csv":
        return _record_csv({key: (v[0] if isinstance(v, list) and len(v) == 1 else v)
                            for key, v in rec.items()})
    return "\n".join(text_vals) + "\n"


def _ctext(v: complex) -> str:
    s = fmt_number(v)
    return s if v.imag else s + "+0i"


def cmd_pair(args):
    cfg = _config(args)
    phi = parse_testfn(args.testfn)
    q = args.q
    if args.mode == "contour":
        rep = dirac_rep() if args.rep == "dirac" else fq_rep(q)
        factor = 1.0 if args.rep == "dirac" else 2.0 * math.pi / (2.0 - q)
        res = contour_pair(rep, phi, ContourSpec(args.zeta), cfg, full_output=True)
        param = {"zeta": args.zeta, "rep": args.rep}
    else:
        if args.eps is None:
            raise UsageError("--eps is required for --mode real")
        factor = 2.0 * math.pi / (2.0 - q)
        res = delta_pair(RegularizedFamily(q, args.eps), phi, cfg)
        param = {"eps": args.eps}
    expected = factor * complex(phi.value_at_zero)
    value = complex(res.value)
    err = abs(value - expected)
    rec = {"mode": args.mode, "q": q, "testfn": phi.label, **param,
           "value": _cvalue(value), "expected": _cvalue(expected), "abs_error": err,
           "error_estimate": res.error_estimate, "evaluations": res.evaluations,
           "converged": bool(res.converged)}
    return _render(args, rec)


def cmd_sweep(args):
    cfg = _config(args)
    phi = parse_testfn(args.testfn)
    schedule = parse_list(args.schedule) if args.schedule else list(DEFAULT_SCHEDULE)
    table = convergence_sweep(args.q, phi, schedule, cfg)
    text = table.to_json() if args.format == "json" else table.to_csv()
    code = 0 if table.converged_fraction >= 0.5 else 3
    if code:
        print(f"error: only {sum(r.converged for r in table.rows)} of {len(table.rows)} "
              "sweep rows converged", file=sys.stderr)
    return text, code


def cmd_contour_check(args):
    cfg = _config(args)
    phi = parse_testfn(args.testfn)
    q = args.q
    zetas = parse_list(args.zetas)
    poly = parse_list(args.poly, parse_complex)
    if not zetas:
        raise UsageError("--zetas must list at least one height")
    reps = [("fq", fq_rep(q), 2.0 * math.pi / (2.0 - q)), ("dirac", dirac_rep(), 1.0)]
    rows = []
    summary = {}
    for name, rep, factor in reps:
        expected = factor * complex(phi.value_at_zero)
        vals = []
        for z in zetas:
            spec = ContourSpec(z)
            v = complex(contour_pair(rep, phi, spec, cfg))
            resid = pseudo_poly_invariance_check(rep, poly, phi, spec, cfg)
            rel = abs(v - expected) / max(abs(expected), 1e-300) if expected else abs(v)
            rows.append({"rep": name, "zeta": z, "value": _cvalue(v), "expected": _cvalue(expected),
                         "rel_error": rel, "poly_residual": resid})
            vals.append(v)
        spread = max(abs(a - vals[0]) for a in vals) / max(abs(vals[0]), 1e-300)
        summary[name] = {"zeta_spread": spread,
                         "max_rel_error": max(r["rel_error"] for r in rows if r["rep"] == name),
                         "max_poly_residual": max(r["poly_residual"] for r in rows if r["rep"] == name)}
    passed = all(s["max_rel_error"] <= 1e-6 and s["zeta_spread"] <= 1e-7
                 and s["max_poly_residual"] < 1e-7 for s in summary.values())
    rec = {"q": q, "testfn": phi.label, "poly": [_cvalue(c) for c in poly],
           "summary": summary, "passed": passed, "rows": rows}
    return _render(args, rec, "rows")


def cmd_superstat(args):
    cfg = _override(args)
    if args.mc:
        if args.E is None:
            raise UsageError("--E is required with --mc")
        if args.E < 0:
            raise DomainError("energy E must be nonnegative")
        f = gamma_mixing(args.n, args.b)
        est, se = mc_generalized_factor(f, args.E, args.samples, args.seed)
        closed = (1.0 + args.E / args.b) ** (-args.n)
        z = (est - closed) / se if se > 0 else (0.0 if est == closed else math.inf)
        rec = {"mode": "monte_carlo", "n": args.n, "b": args.b, "E": args.E,
               "samples": args.samples, "seed": args.seed, "estimate": est, "stderr": se,
               "closed_form": closed, "z_score": z, "within_4sigma": bool(abs(z) <= 4.0)}
        return _render(args, rec)
    if args.emax < 0:
        raise DomainError("--emax must be nonnegative")
    grid = [0.0] if args.emax == 0 else list(np.linspace(0.0, args.emax, args.npoints))
    rep = gamma_matches_qexp(args.n, args.b, grid, cfg)
    rows = [{"E": e, "factor": a, "closed_form": c, "q_exponential": x}
            for e, a, c, x in zip(rep.energies, rep.factor, rep.closed_form, rep.q_exponential)]
    rec = {"mode": "identity", "n": rep.n, "b": rep.b, "q": rep.q, "beta_q": rep.beta_q,
           "weight_mode": rep.weight_mode, "max_rel_dev_quadrature": rep.max_rel_dev_quadrature,
           "max_rel_dev_qexp": rep.max_rel_dev_qexp, "max_dev": rep.max_dev,
           "passed": rep.passed(1e-10), "rows": rows}
    return _render(args, rec, "rows")


def _parse_density(label: str):
    kind, _, rest = label.partition(":")
    kv = {}
    for part in filter(None, rest.split(",")):
        k, eq, v = part.partition("=")
        if not eq:
            raise UsageError(f"bad density field {part!r}")
        kv[k.strip()] = parse_real(v)
    fields = {"uniform": ("a", "b"), "gauss": ("sigma", "mean"), "qgauss": ("q", "beta")}
    if kind not in fields:
        raise UsageError(f"unknown density {kind!r}; use uniform, gauss or qgauss")
    extra = sorted(set(kv) - set(fields[kind]))
    if extra:
        raise UsageError(f"unknown density fields {extra}")
    if kind == "uniform":
        return uniform_density(kv.get("a", 0.0), kv.get("b", 1.0))
    if kind == "gauss":
        return gaussian_density(kv.get("sigma", 1.0), kv.get("mean", 0.0))
    return q_gaussian_pdf(kv.get("q", 1.5), kv.get("beta", 1.0))


def cmd_entropy(args):
    cfg = _override(args)
    if args.maximality:
        rep = entropy_maximality_check(args.q, args.beta, scale=args.scale, cfg=cfg)
        rows = [{"perturbation": r.label, "scale": r.scale, "entropy": r.entropy,
                 "delta": r.delta, "mass_residual": r.mass_residual,
                 "second_moment_residual": r.second_moment_residual,
                 "iterations": r.iterations, "violates": r.violates} for r in rep.rows]
        rec = {"mode": "maximality", "q_gaussian_index": rep.q_gaussian_index,
               "entropic_index": rep.entropic_index, "beta": rep.beta,
               "second_moment": rep.second_moment, "reference_entropy": rep.reference_entropy,
               "tolerance": rep.tolerance, "passed": rep.passed, "rows": rows}
        return _render(args, rec, "rows")
    dens = _parse_density(args.density)
    h = args.h
    shannon = shannon_entropy(dens, cfg)
    central = 0.5 * (tsallis_entropy(1.0 + h, dens, cfg) + tsallis_entropy(1.0 - h, dens, cfg))
    rec = {"mode": "entropy", "density": args.density, "q": args.q,
           "tsallis": tsallis_entropy(args.q, dens, cfg, limit_mode=True),
           "shannon": shannon, "h": h, "tsallis_central": central,
           "limit_abs_error": abs(central - shannon)}
    return _render(args, rec)


# parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", help="write to this path instead of stdout")
    common.add_argument("--abs-tol", type=float, dest="abs_tol")
    common.add_argument("--rel-tol", type=float, dest="rel_tol")
    common.add_argument("--max-subdivisions", type=int, dest="max_subdivisions")

    p = _Parser(prog="qdelta", description="q-exponential delta representation toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", parents=[common], help="evaluate a single function")
    e.add_argument("--fn", required=True, choices=["qexp", "qexpc", "eq", "fq", "ireg"])
    e.add_argument("--q", type=float, required=True)
    e.add_argument("--x", help="real argument(s), comma separated")
    e.add_argument("--z", help="complex argument a+bi")
    e.add_argument("--k", help="wave number (complex a+bi for eq/fq, real for ireg)")
    e.add_argument("--eps", type=float)
    e.add_argument("--method", choices=["closed_form", "quadrature"], default="closed_form")
    e.add_argument("--format", choices=["text", "csv", "json"], default="text")
    e.set_defaults(func=cmd_eval)

    pr = sub.add_parser("pair", parents=[common], help="pair a representative with a test function")
    pr.add_argument("--mode", choices=["contour", "real"], default="contour")
    pr.add_argument("--q", type=float, required=True)
    pr.add_argument("--testfn", default="gauss:a=1")
    pr.add_argument("--zeta", type=float, default=1.0)
    pr.add_argument("--eps", type=float)
    pr.add_argument("--rep", choices=["fq", "dirac"], default="fq")
    pr.add_argument("--format", choices=["csv", "json"], default="json")
    pr.set_defaults(func=cmd_pair)

    s = sub.add_parser("sweep", parents=[common], help="epsilon convergence sweep")
    s.add_argument("--q", type=float, required=True)
    s.add_argument("--testfn", default="gauss:a=1")
    s.add_argument("--schedule", help="strictly decreasing epsilons, comma separated")
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.set_defaults(func=cmd_sweep)

    c = sub.add_parser("contour-check", parents=[common],
                       help="zeta independence and pseudo-polynomial invariance")
    c.add_argument("--q", type=float, required=True)
    c.add_argument("--testfn", default="gauss:a=1")
    c.add_argument("--zetas", default="0.5,1,2")
    c.add_argument("--poly", default="1,2,3", help="ascending coefficients of the added polynomial")
    c.add_argument("--format", choices=["csv", "json"], default="json")
    c.set_defaults(func=cmd_contour_check)

    ss = sub.add_parser("superstat", parents=[common], help="Gamma mixture versus q-exponential")
    ss.add_argument("--n", type=float, required=True, help="Gamma shape")
    ss.add_argument("--b", type=float, required=True, help="Gamma rate")
    ss.add_argument("--emax", type=float, default=10.0)
    ss.add_argument("--npoints", type=int, default=101)
    ss.add_argument("--mc", action="store_true", help="Monte Carlo estimate at a single energy")
    ss.add_argument("--E", type=float)
    ss.add_argument("--samples", type=int, default=1_000_000)
    ss.add_argument("--seed", type=int, default=0)
    ss.add_argument("--format", choices=["csv", "json"], default="json")
    ss.set_defaults(func=cmd_superstat)

    en = sub.add_parser("entropy", parents=[common], help="Tsallis and Shannon entropies")
    en.add_argument("--density", default="gauss:sigma=1",
                    help="uniform:a=0,b=1 | gauss:sigma=1,mean=0 | qgauss:q=1.5,beta=1")
    en.add_argument("--q", type=float, default=1.0)
    en.add_argument("--h", type=float, default=1e-4, help="step of the central difference around q=1")
    en.add_argument("--maximality", action="store_true",
                    help="perturbation check of the q-Gaussian (uses --q as its index)")
    en.add_argument("--beta", type=float, default=1.0)
    en.add_argument("--scale", type=float, default=1e-2)
    en.add_argument("--format", choices=["csv", "json"], default="json")
    en.set_defaults(func=cmd_entropy)
    return p


def _validate(args):
    for name in ("q", "zeta", "eps", "n", "b", "emax", "E", "beta", "scale", "h"):
        v = getattr(args, name, None)
        if isinstance(v, float) and not math.isfinite(v):
            raise UsageError(f"--{name} must be finite")
    if getattr(args, "npoints", 2) < 2:
        raise UsageError("--npoints must be at least 2")
    if getattr(args, "samples", 100) < 100:
        raise UsageError("--samples must be at least 100")
    if getattr(args, "seed", 0) < 0:
        raise UsageError("--seed must be nonnegative")
    if getattr(args, "h", 1e-4) <= 0:
        raise UsageError("--h must be positive")


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _validate(args)
        out = args.func(args)
        text, code = out if isinstance(out, tuple) else (out, 0)
        _emit(args, text)
        return code
    except (UsageError, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QDeltaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
