"""Compiled versus numpy kernels, plus one end-to-end pairing per backend.

    python benchmarks/bench_kernels.py [--repeat N] [--json]

The end-to-end rows run in a fresh interpreter per backend so the import-time
dispatch (``QDELTA_PURE_PYTHON``) is exercised the way users hit it.
"""

import argparse
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from qdelta import kernels

E2E = r"""
import time, qdelta
from qdelta import RegularizedFamily, contour_pair, delta_pair, fq_rep, gaussian_family, integrate_Eq_over_x
phi = gaussian_family(1.0)
t0 = time.perf_counter()
for _ in range({n}):
    contour_pair(fq_rep(1.5), phi)
    delta_pair(RegularizedFamily(1.5, 1e-4), phi)
    integrate_Eq_over_x(1.5, 1 + 1j)
print(qdelta.BACKEND, (time.perf_counter() - t0) / {n})
"""


def kernel_cases():
    rng = np.random.default_rng(0)
    x = rng.normal(scale=3, size=100_000)
    z = rng.normal(size=100_000) + 1j * rng.normal(scale=10, size=100_000)
    k = np.linspace(-5, 5, 100_000)
    fv = rng.normal(size=(5_000, 15)) + 1j * rng.normal(size=(5_000, 15))
    hw = rng.uniform(0.1, 1, size=5_000)
    return {
        "qexp_real (1e5)": lambda m: m.qexp_real(1.5, x),
        "qexp_complex (1e5)": lambda m: m.qexp_complex(1.5, z),
        "lorentzian (1e5)": lambda m: m.lorentzian(1.5, 1e-3, k),
        "gk15_reduce (5e3 panels)": lambda m: m.gk15_reduce(fv, hw),
    }


def best(fn, repeat):
    t = timeit.Timer(fn)
    n, _ = t.autorange()
    return min(t.repeat(repeat, n)) / n


def end_to_end(backend, n=20):
    env = dict(os.environ)
    env.pop("QDELTA_PURE_PYTHON", None)
    if backend == "python":
        env["QDELTA_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", E2E.format(n=n)], env=env,
                         capture_output=True, text=True, check=True).stdout.split()
    return out[0], float(out[1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    py = kernels.get_backend("python")
    try:
        cy = kernels.get_backend("cython")
    except ImportError:
        sys.exit("compiled extension not built; run `pip install -e . --no-build-isolation`")

    rows = []
    for name, fn in kernel_cases().items():
        tp, tc = best(lambda: fn(py), args.repeat), best(lambda: fn(cy), args.repeat)
        rows.append({"case": name, "python_s": tp, "cython_s": tc, "speedup": tp / tc})
    (bp, tp), (bc, tc) = end_to_end("python"), end_to_end("cython")
    assert (bp, bc) == ("python", "cython"), (bp, bc)
    rows.append({"case": "pairings end to end", "python_s": tp, "cython_s": tc, "speedup": tp / tc})

    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'case':28s} {'python':>11s} {'cython':>11s} {'speedup':>8s}")
    for r in rows:
        print(f"{r['case']:28s} {r['python_s'] * 1e3:9.3f}ms {r['cython_s'] * 1e3:9.3f}ms {r['speedup']:7.2f}x")


if __name__ == "__main__":
    main()
