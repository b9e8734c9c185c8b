"""Compare the compiled and pure-Python float kernels.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``. The Python
backend batch functions are numpy-vectorised, so the gap there is smaller
than for the scalar objective that the optimizer calls in its inner loop.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from diagratio.kernels import get_backend, has_compiled
from diagratio.optimize import random_convex_polygons, sample_params


def _cases(backend, params, X, Y):
    a, b, c, d = (np.ascontiguousarray(v) for v in params.T)
    rows = [tuple(map(float, row)) for row in params[:2000]]
    return {
        "params_objective x2000 (r=1)": lambda: [backend.params_objective(*row, 1.0) for row in rows],
        "params_objective x2000 (r=0.8)": lambda: [backend.params_objective(*row, 0.8) for row in rows],
        "closed_form_ratios (1e4)": lambda: backend.closed_form_ratios(a, b, c, d),
        "cevian_ratios (1e4 octagons)": lambda: backend.cevian_ratios(X, Y, 0.3),
        "convex_mask (1e4 octagons)": lambda: backend.convex_mask(X, Y, 1e-12),
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if not has_compiled():
        raise SystemExit("compiled backend not built; run `pip install --no-build-isolation -e .` first")

    params = sample_params(10_000, seed=0)
    X, Y = random_convex_polygons(8, 10_000, seed=0)
    X, Y = np.ascontiguousarray(X), np.ascontiguousarray(Y)
    py, cy = get_backend("python"), get_backend("cython")
    py_cases, cy_cases = _cases(py, params, X, Y), _cases(cy, params, X, Y)

    print(f"{'kernel':34s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speed-up':>9s}")
    for name in py_cases:
        tp = min(timeit.repeat(py_cases[name], number=1, repeat=args.repeat)) * 1e3
        tc = min(timeit.repeat(cy_cases[name], number=1, repeat=args.repeat)) * 1e3
        print(f"{name:34s} {tp:12.2f} {tc:12.3f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
