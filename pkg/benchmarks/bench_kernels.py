"""Time the numba and numpy variants of every kernel on the same inputs.

    python benchmarks/bench_kernels.py [--p 100003] [--g 10] [--repeat 5]

The numba column excludes compilation: each kernel is called once before
timing starts.  Outputs of the two backends are compared as well.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from digitpatterns import kernels
from digitpatterns.arith import multiplicative_order, small_primes


def build_cases(p: int, g: int) -> dict[str, tuple]:
    t = multiplicative_order(g, p)
    gm = g % p
    elements = np.sort(kernels.orbit(1, gm, p, t))
    member = np.zeros(p, dtype=np.bool_)
    member[elements] = True
    h = 50
    xs = np.array([x for x in range(-h, h + 1) if x], dtype=np.int64)
    inverses = np.array([pow(int(x), -1, p) for x in xs], dtype=np.int64)
    k = 4
    digits, _ = kernels.cyclic_digits(1, p, g, t)
    conv = np.zeros(200, dtype=np.int64)
    conv[:100] = np.arange(1, 101)
    base = np.array(small_primes(int(np.sqrt(p + 10**6)) + 1), dtype=np.int64)
    return {
        "sieve_segment": (p, p + 10**6, base),
        "orbit": (1, gm, p, t),
        "cyclic_digits": (1, p, g, t),
        "sliding_seen": (digits, k, g, g**k),
        "orbit_seen": (1, gm, p, t, g**k),
        "coset_reps": (p, gm, t, (p - 1) // t),
        "avoid_naive": (elements, p, 100),
        "count_n_pairs": (member, p, xs, inverses),
        "count_n_orbit": (elements, p, xs, h),
        "scatter_products": (elements, p, xs),
        "correlate": (conv, elements, p),
    }


def best_of(fn, args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return bool(np.array_equal(np.asarray(a), np.asarray(b)))


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=100003)
    ap.add_argument("--g", type=int, default=10)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    cases = build_cases(args.p, args.g)
    nb, npy = kernels.BACKENDS["numba"], kernels.BACKENDS["numpy"]
    print(f"p={args.p} g={args.g} t={multiplicative_order(args.g, args.p)} repeat={args.repeat}")
    print(f"{'kernel':<18}{'numba ms':>12}{'numpy ms':>12}{'speedup':>10}  agree")
    for name, call in cases.items():
        agree = same(nb[name](*call), npy[name](*call))
        a = best_of(nb[name], call, args.repeat) * 1e3
        b = best_of(npy[name], call, args.repeat) * 1e3
        print(f"{name:<18}{a:>12.3f}{b:>12.3f}{b / max(a, 1e-6):>10.1f}  {agree}")


if __name__ == "__main__":
    main()
