"""Compare the compiled scan kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--n N] [--repeat R]
"""
import argparse
import timeit

import numpy as np

from carakit import _fallback

try:
    from carakit import _kernels
except ImportError:  # extension not built
    _kernels = None


def make_inputs(n, seed=0):
    rng = np.random.default_rng(seed)
    phi = np.sqrt(rng.uniform(0, 1, n)) * 0.999 * np.exp(2j * np.pi * rng.uniform(0, 1, n))
    omega = rng.uniform(0, 0.999, n) * np.exp(2j * np.pi * rng.uniform(0, 1, n))
    return phi, omega, (1 + omega) / (1 - omega)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2561, help="sample points (default: the default grid size)")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    phi, omega, F = make_inputs(args.n)
    cases = {
        "slack_c": lambda m: m.slack_c(phi, omega),
        "slack_d": lambda m: m.slack_d(F, phi),
        "rotation_worst(360)": lambda m: m.rotation_worst(phi, omega, 360),
        "leaf_contains": lambda m: m.leaf_contains(phi),
    }
    print(f"n = {args.n}, best of {args.repeat}")
    print(f"{'kernel':<22}{'numpy [ms]':>12}{'cython [ms]':>13}{'speedup':>9}")
    for name, fn in cases.items():
        t_py = min(timeit.repeat(lambda: fn(_fallback), number=1, repeat=args.repeat)) * 1e3
        if _kernels is None:
            print(f"{name:<22}{t_py:>12.3f}{'n/a':>13}{'':>9}")
            continue
        t_c = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<22}{t_py:>12.3f}{t_c:>13.3f}{t_py / t_c:>8.1f}x")


if __name__ == "__main__":
    main()
