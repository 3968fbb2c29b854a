#!/usr/bin/env python3
"""Benchmark the compiled enumeration kernel against the pure-Python twin.

Times the count and fill passes over the standard-pair orbit ball for both
backends at a range of cutoffs and prints rows per (functional, cutoff)
with the speedup.  The pure backend is skipped above --pure-max to keep
runtimes sane.

    python benchmarks/bench_kernel.py [--cutoffs 100,200,400] [--pure-max 400]
"""

import argparse
import time

import numpy as np

from multicurves import kernel
from multicurves.orbits import _plan_kernel
from multicurves.torus import ALPHA_BETA, LengthFunctional

FUNCTIONALS = [("i:a+b", ALPHA_BETA), ("flat", LengthFunctional.flat())]


def run_once(backend, kind, args, pmax):
    t0 = time.perf_counter()
    n = backend.count_pairs(kind, args, 0, pmax + 1)
    t_count = time.perf_counter() - t0
    P = np.empty(n, dtype=np.int64)
    Q = np.empty_like(P)
    X = np.empty_like(P)
    Y = np.empty_like(P)
    t0 = time.perf_counter()
    backend.fill_pairs(kind, args, 0, pmax + 1, P, Q, X, Y)
    t_fill = time.perf_counter() - t0
    return n, t_count, t_fill


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cutoffs", default="100,250,500,1000,2000")
    parser.add_argument("--pure-max", type=int, default=500,
                        help="largest cutoff to run on the pure backend")
    opts = parser.parse_args()
    cutoffs = [int(v) for v in opts.cutoffs.split(",")]

    if kernel.compiled is None:
        print("compiled kernel not built; showing pure backend only")
    header = f"{'phi':8s} {'L':>6s} {'pairs':>10s} " \
             f"{'compiled':>10s} {'pure':>10s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for name, functional in FUNCTIONALS:
        for L in cutoffs:
            kind, args, pmax, _ = _plan_kernel(functional, L)
            row = f"{name:8s} {L:6d}"
            n = c_total = None
            if kernel.compiled is not None:
                n, t_count, t_fill = run_once(kernel.compiled, kind, args, pmax)
                c_total = t_count + t_fill
                row += f" {n:10d} {c_total:9.3f}s"
            else:
                row += f" {'':10s} {'-':>10s}"
            if L <= opts.pure_max:
                n, t_count, t_fill = run_once(kernel.pure, kind, args, pmax)
                p_total = t_count + t_fill
                row += f" {p_total:9.3f}s"
                if c_total:
                    row += f" {p_total / c_total:7.1f}x"
            else:
                row += f" {'skipped':>10s}"
            print(row, flush=True)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
