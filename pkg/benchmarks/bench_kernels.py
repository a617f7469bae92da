"""Compare the numba and numpy back ends of the F_p kernels.

    python benchmarks/bench_kernels.py [--sizes 50 100 200] [--p 3] [--repeat 3]
"""

import argparse
import time

import numpy as np

from weylchar import _kernels
from weylchar.verify import _coeff_vector, binary_forms


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def bench_rref(sizes, p, repeat, rng):
    print(f"rref over F_{p}")
    print(f"{'size':>8} {'numba s':>10} {'numpy s':>10} {'ratio':>7}")
    for n in sizes:
        A = rng.integers(0, p, size=(n, n + n // 2), dtype=np.int64)
        t_nb, (R1, piv1) = best_of(lambda: _kernels.rref(A, p, use_numba=True), repeat)
        t_np, (R2, piv2) = best_of(lambda: _kernels.rref(A, p, use_numba=False), repeat)
        assert (R1 == R2).all() and list(piv1) == list(piv2)
        print(f"{n:>8} {t_nb:>10.4f} {t_np:>10.4f} {t_np / t_nb:>7.1f}")


def bench_dependence(p, degree, repeat):
    forms = [_coeff_vector(f) for f in binary_forms(p, degree, 1)]
    print(f"\nannihilator table over F_{p}, {len(forms)} forms of degree 1..{degree}")
    t_nb, T1 = best_of(lambda: _kernels.bivariate_dependence_table(forms, p, 24, use_numba=True), repeat)
    # the numpy path is slow; time it on a slice and scale
    k = min(len(forms), 40)
    t_np, T2 = best_of(lambda: _kernels.bivariate_dependence_table(forms[:k], p, 24, use_numba=False), 1)
    assert (T1[:k, :k] == T2).all()
    scaled = t_np * (len(forms) / k) ** 2
    print(f"numba {t_nb:.3f}s   numpy ~{scaled:.1f}s (measured {t_np:.2f}s on {k}x{k})")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 400])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--degree", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    _kernels.warm_up()
    # compile the annihilator kernels outside the timed region
    _kernels.bivariate_dependence_table([[1, 1], [0, 1]], 2, 4, use_numba=True)
    bench_rref(args.sizes, args.p, args.repeat, np.random.default_rng(args.seed))
    bench_dependence(args.p, args.degree, args.repeat)


if __name__ == "__main__":
    main()
