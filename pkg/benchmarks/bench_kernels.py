"""Compare the compiled and pure-Python kernel backends.

Times the two hot loops: exact 2-D vertex enumeration over the LP grid and
monomial beam evaluation. Run with ``python3 benchmarks/bench_kernels.py``.
"""

import argparse
import itertools
import time

import numpy as np

from fdcell import kernels, lp
from fdcell.network import NetworkConfig


def lp_rows(limit):
    rows = []
    for K, M, N in itertools.product(range(2, 7), range(1, limit + 1), range(1, limit + 1)):
        config = NetworkConfig(K, M, N)
        if M >= K * N:
            continue
        for build in (lp.scheme1_lp, lp.scheme2_lp, lp.no_bs2bs_lp):
            full = build(config) + lp._nonneg()
            rows.append(np.ascontiguousarray(lp._integer_rows(full), dtype=np.int64))
    return rows


def bench_lp(backend, rows, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for r in rows:
            backend.lp2_max(r)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_monomials(backend, coeffs, exps, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        backend.monomials(coeffs, exps)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--grid", type=int, default=40, help="largest M and N of the LP grid")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    found = kernels.backends()
    rows = lp_rows(args.grid)
    rng = np.random.default_rng(0)
    alphabet, T, d = 6, 3, 1458
    coeffs = rng.uniform(0.5, 2.0, size=(alphabet, d))
    exps = np.ascontiguousarray(np.indices((T,) * alphabet).reshape(alphabet, -1).T, dtype=np.int64)

    print(f"LP programs: {len(rows)}; monomials: {exps.shape[0]} x {d}")
    print(f"{'backend':<8} {'lp grid [s]':>12} {'monomials [s]':>14}")
    timings = {}
    for name, mod in sorted(found.items()):
        timings[name] = (bench_lp(mod, rows, args.repeat), bench_monomials(mod, coeffs, exps, args.repeat))
        print(f"{name:<8} {timings[name][0]:>12.4f} {timings[name][1]:>14.4f}")
    if {"python", "cython"} <= timings.keys():
        lp_x = timings["python"][0] / timings["cython"][0]
        mono_x = timings["python"][1] / timings["cython"][1]
        print(f"speedup  {lp_x:>11.1f}x {mono_x:>13.1f}x")
        a = found["python"].monomials(coeffs, exps)
        b = found["cython"].monomials(coeffs, exps)
        print(f"max relative monomial difference: {np.max(np.abs(a - b) / np.abs(a)):.2e}")
    else:
        print("compiled backend not built; only the fallback was timed")


if __name__ == "__main__":
    main()
