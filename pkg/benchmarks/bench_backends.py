"""Compare the numba and pure-python kernel backends.

Times the two hot paths (generative sampling and the disjoint-quorum
search) on identical inputs and prints a small table. Run directly:

    python3 benchmarks/bench_backends.py [--repeats N]

Both backends consume the same seeds, so the work per row is identical
and the ratio column is a clean speedup figure.
"""

import argparse
import time

from fbaskit import _nbkernels, _pykernels
from fbaskit.fbas import Fbas, _canonicalize_node
from fbaskit.rng import derive_seed


def bench_sampling(kernels, n, k, lam, count, master_seed):
    start = time.perf_counter()
    for trial in range(count):
        kernels.sample_raw(n, k, lam, derive_seed(master_seed, trial))
    return time.perf_counter() - start


def bench_search(kernels, n, k, lam, count, master_seed):
    flats = []
    for trial in range(count):
        counts, masks = _nbkernels.sample_raw(n, k, lam, derive_seed(master_seed, trial))
        per_node = [[] for _ in range(n)]
        i = 0
        for v in range(n):
            for _ in range(int(counts[v])):
                per_node[v].append(int(masks[i]))
                i += 1
        fbas = Fbas(n, tuple(_canonicalize_node(v, ms) for v, ms in enumerate(per_node)))
        flats.append(fbas.flat_arrays())
    start = time.perf_counter()
    for offsets, slice_masks in flats:
        kernels.find_disjoint(offsets, slice_masks, n)
    return time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    _nbkernels.warmup()

    rows = [
        ("sample n=16 k=4 lam=100 x200", bench_sampling, (16, 4, 100.0, 200, 11)),
        ("sample n=16 k=2 lam=10000 x20", bench_sampling, (16, 2, 10000.0, 20, 12)),
        ("search n=16 k=4 lam=100 x200", bench_search, (16, 4, 100.0, 200, 13)),
        ("search n=16 k=6 lam=1000 x20", bench_search, (16, 6, 1000.0, 20, 14)),
    ]

    print(f"{'workload':34} {'numba (s)':>10} {'python (s)':>11} {'speedup':>8}")
    for name, fn, params in rows:
        t_nb = min(fn(_nbkernels, *params) for _ in range(args.repeats))
        t_py = min(fn(_pykernels, *params) for _ in range(args.repeats))
        print(f"{name:34} {t_nb:10.4f} {t_py:11.4f} {t_py / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
