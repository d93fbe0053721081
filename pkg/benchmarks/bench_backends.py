#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times each hot kernel on simulation-sized inputs plus a full IMEX step, for
both lanes, and prints a comparison table.  Run:

    python3 benchmarks/bench_backends.py [--m 25600] [--repeat 5] [--json OUT]
"""

import argparse
import json
import time

import numpy as np

from edchrom.backends import numpy_backend

try:
    from edchrom.backends import numba_backend
except ImportError:
    numba_backend = None

from edchrom.flux import SchemeKind
from edchrom.harness import experiment_preset
from edchrom.transform import jacobian_parts_grid


def timeit(fn, repeat):
    fn()  # warm up (JIT compile, caches)
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def kernel_cases(m):
    rng = np.random.default_rng(42)
    model, config = experiment_preset(4, SchemeKind.COMP_UPW5, m, nu=0.95, D_a=1e-4)
    w = np.maximum(config.initial_w, 0.0)
    c = w * 0.5
    v, _a, _b, gamma = jacobian_parts_grid(model, np.maximum(c, 1e-12))
    sten = rng.normal(0.0, 1.0, (3, m, 5))
    n = 3
    diag = rng.normal(0, 0.2, (m, n, n)) + 4.0 * np.eye(n)
    off = np.tile(-0.5 * np.eye(n), (m - 1, 1, 1))
    rhs = rng.normal(0, 1, (m, n))
    mats = rng.normal(0, 0.3, (m, n, n)) + 3.0 * np.eye(n)
    mrhs = rng.normal(0, 1, (m, n, 10))
    return {
        "solve_p_grid": lambda be: be.solve_p_grid(w, model.b, model.eta, model.nu),
        "secular_roots_grid": lambda be: be.secular_roots_grid(v, gamma),
        "weno5_grid": lambda be: be.weno5_grid(sten, 1e-6),
        "solve_many": lambda be: be.solve_many(mats, mrhs),
        "block_tridiag_solve": lambda be: be.block_tridiag_solve(off, diag, off, rhs),
    }


def step_case(m, backend_name):
    import os
    import subprocess
    import sys

    # a full step must run in a subprocess so the lane env flag takes effect
    code = (
        "import time, numpy as np\n"
        "from edchrom.harness import experiment_preset\n"
        "from edchrom.flux import SchemeKind\n"
        "import edchrom.stepper as st\n"
        "from edchrom.transform import inverse_grid\n"
        f"model, config = experiment_preset(4, SchemeKind.COMP_UPW5, {m}, nu=0.95, D_a=1e-4)\n"
        "state = config.initial_state(model)\n"
        "c, p = inverse_grid(model, state.w, return_p=True)\n"
        "for _ in range(3):\n"
        "    c, p = inverse_grid(model, state.w, p0=p, return_p=True)\n"
        "    state, _ = st._imex_step(config, model, state, c_n=c, p_n=p)\n"
        "t0 = time.perf_counter(); n = 10\n"
        "for _ in range(n):\n"
        "    c, p = inverse_grid(model, state.w, p0=p, return_p=True)\n"
        "    state, _ = st._imex_step(config, model, state, c_n=c, p_n=p)\n"
        "print((time.perf_counter() - t0) / n)\n"
    )
    env = dict(os.environ)
    env["EDCHROM_DISABLE_NUMBA"] = "0" if backend_name == "numba" else "1"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True,
                         text=True, env=env, check=True)
    return float(out.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--m", type=int, default=25600)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", type=str, default=None)
    args = ap.parse_args()

    lanes = {"numpy": numpy_backend}
    if numba_backend is not None:
        lanes["numba"] = numba_backend

    results = {}
    cases = kernel_cases(args.m)
    print(f"kernel timings at m={args.m} (best of {args.repeat}):\n")
    header = f"{'kernel':24s}" + "".join(f"{name:>12s}" for name in lanes)
    if len(lanes) == 2:
        header += f"{'speedup':>10s}"
    print(header)
    for kname, case in cases.items():
        row = {}
        for lname, be in lanes.items():
            row[lname] = timeit(lambda: case(be), args.repeat)
        results[kname] = row
        line = f"{kname:24s}" + "".join(f"{row[l] * 1e3:10.2f}ms" for l in lanes)
        if len(lanes) == 2:
            line += f"{row['numpy'] / row['numba']:9.2f}x"
        print(line)

    print("\nfull IMEX step (COMP-UPW5, D_a=1e-4):")
    step = {}
    for lname in lanes:
        step[lname] = step_case(args.m, lname)
        print(f"  {lname:8s} {step[lname] * 1e3:8.2f} ms/step")
    results["imex_step"] = step
    if len(step) == 2:
        print(f"  speedup  {step['numpy'] / step['numba']:8.2f}x")

    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"m": args.m, "seconds": results}, fh, indent=2)
        print(f"\nwrote {args.json}")


if __name__ == "__main__":
    main()
