"""Time the compiled kernels against the pure-Python fallback.

Runs each numerical kernel on a representative workload with both
backends and prints a per-kernel comparison table. The compiled column
is skipped when the extension is not built.

Usage:
    python benchmarks/bench_kernels.py [--repeats 5]
"""

import argparse
import timeit

import mubose._kernels_py as py_kernels

try:
    import mubose._kernels as c_kernels
except ImportError:
    c_kernels = None

# (kernel name, args, loop count per timing sample)
WORKLOADS = [
    ("lerch_sum", (0.9, 0.5, 1e-14, 10**7), 200),
    ("a_coeff_values", (8, 0.05), 2000),
    ("closed_moment_sum", (0.2, 1.0, 3, 1e-12, 1e-300, 10**6), 200),
    ("oracle_moment_sum", (0.2, 1.0, 3, 1e-12, 1e-300, 10**6), 200),
    ("power_sum", (6, 2, 0.5, 2000), 20),
    ("pq_oracle_sum", (0.9, 0.7, 1.0, 3, 1e-12, 1e-300, 10**6), 200),
]


def best_time(module, name, args, number, repeats):
    fn = getattr(module, name)
    timer = timeit.Timer(lambda: fn(*args))
    return min(timer.repeat(repeat=repeats, number=number)) / number


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing samples per kernel (best is kept)")
    args = parser.parse_args(argv)

    header = f"{'kernel':<20} {'python':>12} {'compiled':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, call_args, number in WORKLOADS:
        t_py = best_time(py_kernels, name, call_args, number, args.repeats)
        if c_kernels is not None:
            t_c = best_time(c_kernels, name, call_args, number, args.repeats)
            print(f"{name:<20} {t_py * 1e6:>10.2f}us {t_c * 1e6:>10.2f}us "
                  f"{t_py / t_c:>8.1f}x")
        else:
            print(f"{name:<20} {t_py * 1e6:>10.2f}us {'n/a':>12} {'n/a':>9}")
    if c_kernels is None:
        print("\ncompiled extension not available; showing fallback only")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
