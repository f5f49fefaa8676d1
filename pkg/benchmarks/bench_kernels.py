"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload is run on both backends, the outputs are checked to agree,
and the best wall time of N runs is reported.
"""

import argparse
import sys
import time

from k3lattice._kernels import _pure
from k3lattice.roots import ade_gram

try:
    from k3lattice._kernels import _speedups
except ImportError:
    _speedups = None


def positive(family, n):
    return [[-x for x in row] for row in ade_gram(family, n)]


def block_sum(*grams):
    n = sum(len(g) for g in grams)
    out = [[0] * n for _ in range(n)]
    off = 0
    for g in grams:
        for i, row in enumerate(g):
            out[off + i][off : off + len(row)] = row
        off += len(g)
    return out


def short_vector_cases():
    yield "E8, norm <= 2", positive("E", 8), 2
    yield "E8, norm <= 4", positive("E", 8), 4
    yield "D12, norm <= 2", positive("D", 12), 2
    yield "A10+E7, norm <= 2", block_sum(positive("A", 10), positive("E", 7)), 2
    yield "A1^16, norm <= 4", block_sum(*[positive("A", 1)] * 16), 4


def histogram_cases():
    # (orders, qnum, bnum, modulus): q(x) = sum x_i^2 qnum_i + 2 sum x_i x_j bnum_ij mod modulus
    yield "(Z/2)^12 diagonal", [2] * 12, [3] * 12, [[0] * 12 for _ in range(12)], 4
    yield "(Z/3)^7", [3] * 7, [4] * 7, [[0] * 7 for _ in range(7)], 6
    b = [[0] * 6 for _ in range(6)]
    for i in range(0, 6, 2):
        b[i][i + 1] = 1
    yield "(Z/4)^6 with pairing", [4] * 6, [0] * 6, b, 8
    yield "Z/8 x (Z/9)^3", [8, 9, 9, 9], [63, 16, 16, 32], [[0] * 4 for _ in range(4)], 144


def best(fn, args, repeat):
    times = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _speedups is None:
        print("compiled module not built; run pip install -e . first", file=sys.stderr)
        return 1
    rows = []
    for name, a, bound in short_vector_cases():
        tp, rp = best(_pure.short_vectors, (a, bound), args.repeat)
        tc, rc = best(_speedups.short_vectors, (a, bound), args.repeat)
        if sorted(rp) != sorted(rc):
            print(f"short_vectors {name}: backends disagree", file=sys.stderr)
            return 1
        rows.append(("short_vectors", name, len(rp), tp, tc))
    for name, orders, qnum, bnum, mod in histogram_cases():
        tp, rp = best(_pure.value_histogram, (orders, qnum, bnum, mod), args.repeat)
        tc, rc = best(_speedups.value_histogram, (orders, qnum, bnum, mod), args.repeat)
        if rp != rc:
            print(f"value_histogram {name}: backends disagree", file=sys.stderr)
            return 1
        rows.append(("value_histogram", name, sum(rp.values()), tp, tc))
    print(f"{'kernel':<16} {'workload':<22} {'size':>8} {'pure s':>10} {'cython s':>10} {'speedup':>8}")
    for kernel, name, size, tp, tc in rows:
        print(f"{kernel:<16} {name:<22} {size:>8} {tp:>10.4f} {tc:>10.4f} {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
