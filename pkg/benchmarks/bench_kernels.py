"""Compare the compiled enumeration kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--M 12 16] [--repeat 3]
"""

import argparse
import timeit

import numpy as np

from spinbijection import _pykernels

try:
    from spinbijection import _ckernels
except ImportError:
    _ckernels = None


def bench(mod, M, repeat):
    t = mod.digit_table(2, M)
    rows = np.ascontiguousarray(t[::-1])
    cases = {
        "digit_table": lambda: mod.digit_table(2, M),
        "compose_doubled": lambda: mod.compose_doubled(t, 2),
        "cyclic_chain_sums": lambda: mod.cyclic_chain_sums(rows),
    }
    return {name: min(timeit.repeat(fn, number=1, repeat=repeat)) for name, fn in cases.items()}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--M", type=int, nargs="+", default=[10, 14, 16])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; run `python setup.py build_ext --inplace` first")
    print(f"{'kernel':<18} {'M':>3} {'python [s]':>12} {'cython [s]':>12} {'speedup':>9}")
    for M in args.M:
        py = bench(_pykernels, M, args.repeat)
        cy = bench(_ckernels, M, args.repeat) if _ckernels else {}
        for name, tp in py.items():
            if name in cy:
                tc = cy[name]
                print(f"{name:<18} {M:>3} {tp:>12.4g} {tc:>12.4g} {tp / tc:>8.1f}x")
            else:
                print(f"{name:<18} {M:>3} {tp:>12.4g} {'-':>12} {'-':>9}")


if __name__ == "__main__":
    main()
