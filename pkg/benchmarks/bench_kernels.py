"""Compare the compiled kernels against the pure-Python fallback.

Runs the four hot kernels on identical seeded workloads through both
implementations and prints per-kernel timings with the speedup factor.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import time

from relk2 import _kernels_py as pure
from relk2.kernels import table

try:
    from relk2 import _speedups as fast
except ImportError:
    fast = None


def cyclic_table(n):
    return table([(i + j) % n for i in range(n) for j in range(n)])


def bench(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def workloads(seed):
    rng = random.Random(seed)
    n = 64
    idx = cyclic_table(n)
    vecs = [
        (
            table([rng.randrange(2) for _ in range(n)]),
            table([rng.randrange(2) for _ in range(n)]),
        )
        for _ in range(400)
    ]

    def conv(impl):
        for a, b in vecs:
            impl.convolve(a, b, idx, 2)

    mats2 = [
        [[rng.randrange(2) for _ in range(48)] for _ in range(48)]
        for _ in range(40)
    ]

    def rr(impl):
        for m in mats2:
            impl.rref([row[:] for row in m], 48, 2)

    # 6x6 keeps the whole sweep inside int64, which is the compiled
    # kernel's domain; larger inputs overflow on purpose and the dispatcher
    # falls back to the bigint path, so timing them compares nothing
    matz = [
        [[rng.randint(-9, 9) for _ in range(6)] for _ in range(6)]
        for _ in range(200)
    ]

    def ech(impl):
        for m in matz:
            try:
                impl.echelon_int([row[:] for row in m], 6)
            except OverflowError:
                pass

    nz = 32
    mul = table([(a * b) % nz for a in range(nz) for b in range(nz)])
    add = table([(a + b) % nz for a in range(nz) for b in range(nz)])
    neg = table([(-a) % nz for a in range(nz)])
    ideal = [0, 8, 16, 24]

    def ds(impl):
        impl.ds_rows(nz, mul, add, neg, ideal)

    return [
        ("convolve  (400 x n=64, F_2)", conv),
        ("rref      (40 x 48x48, F_2)", rr),
        ("echelon   (200 x 6x6, Z)", ech),
        ("ds_rows   (Z/32, ideal (8))", ds),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="best-of-N timing")
    ap.add_argument("--seed", type=int, default=1729)
    args = ap.parse_args()

    if fast is None:
        print("compiled extension not built; nothing to compare")
        print("(python fallback is the active implementation)")
        return

    print(f"{'kernel':<30} {'python':>10} {'compiled':>10} {'speedup':>9}")
    for label, work in workloads(args.seed):
        t_py = bench(work, (pure,), args.repeat)
        t_c = bench(work, (fast,), args.repeat)
        print(
            f"{label:<30} {t_py * 1000:>8.1f}ms {t_c * 1000:>8.1f}ms "
            f"{t_py / t_c:>8.1f}x"
        )


if __name__ == "__main__":
    main()
