"""Compare the compiled and pure-Python semigroup kernels.

    python3 benchmarks/bench_kernels.py [--max-gen 25] [--repeat 3]
"""

import argparse
import itertools
import time
from functools import reduce
from math import gcd

from arfcurves import kernels


def workload(max_gen):
    for k in (2, 3):
        for gens in itertools.combinations(range(3, max_gen + 1), k):
            if reduce(gcd, gens) == 1:
                yield gens


def run(backend, cases):
    for gens in cases:
        table, c = backend.generate(gens)
        backend.multiplicities(table, c)
        backend.is_arf(table, c)
        backend.minimal_generators(table, c)


def best_of(backend, cases, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        run(backend, cases)
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-gen", type=int, default=25)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    cases = list(workload(args.max_gen))
    print(f"{len(cases)} generator sets, generators in [3, {args.max_gen}], best of {args.repeat}")
    py = best_of(kernels.py_backend, cases, args.repeat)
    print(f"python : {py:8.3f} s")
    if kernels.c_backend is None:
        print("cython : not built")
        return
    c = best_of(kernels.c_backend, cases, args.repeat)
    print(f"cython : {c:8.3f} s   speedup x{py / c:.1f}")


if __name__ == "__main__":
    main()
