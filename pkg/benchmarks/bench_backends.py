"""Compare the compiled and pure-Python kernel backends.

Runs the real hot paths (building the universal law, extracting A, the
weight-reduced quotient computation) plus microbenchmarks of the raw
kernels, and prints the timings side by side.

Usage: python benchmarks/bench_backends.py [--weight W]
"""

import argparse
import random
import time
from fractions import Fraction

from krichever import _kernels_py
from krichever import core, fgl, lattice

try:
    from krichever import _kernels_c
except ImportError:
    _kernels_c = None


def timed(fn, repeat=1):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def random_terms(rng, nvars, nterms, integral):
    terms = {}
    while len(terms) < nterms:
        e = tuple(rng.randrange(4) for _ in range(nvars))
        num = rng.randrange(-10**6, 10**6)
        terms[e] = Fraction(num) if integral else Fraction(num, rng.randrange(1, 997))
    return terms


def bench_kernels(kernels, rng_seed=7):
    rng = random.Random(rng_seed)
    a = random_terms(rng, 10, 120, True)
    b = random_terms(rng, 10, 120, True)
    t_int, _ = timed(lambda: kernels.poly_mul_terms(a, b), repeat=5)
    a2 = random_terms(rng, 10, 80, False)
    b2 = random_terms(rng, 10, 80, False)
    t_frac, _ = timed(lambda: kernels.poly_mul_terms(a2, b2), repeat=5)
    mat = [[rng.randrange(-9, 10) for _ in range(40)] for _ in range(30)]
    cols = [[mat[i][j] for i in range(30)] for j in range(40)]

    def run_hnf():
        work = [list(c) for c in cols]
        return kernels.hnf_cols(work, 30)

    t_hnf, _ = timed(run_hnf, repeat=5)

    def run_snf():
        work = [list(r) for r in mat]
        return kernels.snf_diag(work)

    t_snf, _ = timed(run_snf, repeat=5)
    return {"poly_mul(int)": t_int, "poly_mul(frac)": t_frac, "hnf": t_hnf, "snf": t_snf}


def bench_pipeline(weight):
    def run():
        model = lattice.LazardModel(weight)
        return [model.quotient_report(n) for n in range(1, weight + 1)]

    t_build, data = timed(lambda: fgl.compute_A(fgl.build_universal_fgl(weight)))
    t_quot, _ = timed(run)
    return {"build_fgl+A": t_build, "quotient(all weights)": t_quot}


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--weight", type=int, default=10)
    args = parser.parse_args()

    backends = [("python", _kernels_py)]
    if _kernels_c is not None:
        backends.append(("c", _kernels_c))
    else:
        print("compiled backend not built; showing pure Python only")

    results = {}
    for name, kernels in backends:
        core.kernels = kernels  # route Poly multiplication through this backend
        from krichever import backend

        backend.kernels = kernels
        lattice.kernels = kernels
        micro = bench_kernels(kernels)
        pipe = bench_pipeline(args.weight)
        results[name] = {**micro, **pipe}

    keys = list(next(iter(results.values())))
    width = max(len(k) for k in keys)
    header = f"{'benchmark':<{width}}" + "".join(f"{n:>12}" for n in results)
    if len(results) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for k in keys:
        row = f"{k:<{width}}" + "".join(f"{results[n][k]*1e3:>10.2f}ms" for n in results)
        if len(results) == 2:
            row += f"{results['python'][k] / results['c'][k]:>9.2f}x"
        print(row)


if __name__ == "__main__":
    main()
