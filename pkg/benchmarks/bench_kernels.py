"""Time the numba kernels against their pure-numpy counterparts.

    python benchmarks/bench_kernels.py [--quick] [--repeat N]

Each kernel is warmed up once (numba compiles on first call), then timed
as the best of ``--repeat`` runs.  Outputs are compared before timing.
"""
import argparse
import time

import numpy as np

from indroot import kernels
from indroot.enumerate import graph_rows, tree_parent_array
from indroot.survey import tree_poly_rows


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def bench_tree_poly(n, repeat):
    parents = tree_parent_array(n)
    a = kernels.tree_poly_batch_numba(parents)
    b = kernels.tree_poly_batch_numpy(parents)
    assert np.array_equal(a, b)
    return (f"tree_poly_batch  n={n} ({len(parents)} trees)",
            best_of(lambda: kernels.tree_poly_batch_numba(parents), repeat),
            best_of(lambda: kernels.tree_poly_batch_numpy(parents), repeat))


def bench_aberth(n, repeat):
    rows = tree_poly_rows(n)
    deg = (rows != 0).sum(axis=1) - 1
    d = int(np.bincount(deg).argmax())
    batch = rows[deg == d][:, :d + 1].astype(np.float64)
    kernels.aberth_batch_numba(batch[:2])
    return (f"aberth_batch     n={n} ({len(batch)} polys, degree {d})",
            best_of(lambda: kernels.aberth_batch_numba(batch), repeat),
            best_of(lambda: kernels.aberth_batch_numpy(batch), repeat))


def bench_canon(n, repeat):
    reps = graph_rows(n)
    codes = [kernels.canonical_code_numba(r) for r in reps]
    assert codes == [kernels.canonical_code_python(r) for r in reps]
    return (f"canonical_code   n={n} ({len(reps)} graphs)",
            best_of(lambda: [kernels.canonical_code_numba(r) for r in reps], repeat),
            best_of(lambda: [kernels.canonical_code_python(r) for r in reps], repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true", help="small sizes, for smoke runs")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    tree_n, canon_n = (9, 5) if args.quick else (15, 7)
    results = [bench_tree_poly(tree_n, args.repeat), bench_aberth(tree_n, args.repeat),
               bench_canon(canon_n, args.repeat)]
    print(f"{'kernel':<52}{'numba s':>10}{'numpy s':>10}{'speedup':>9}")
    for label, t_jit, t_np in results:
        print(f"{label:<52}{t_jit:>10.4f}{t_np:>10.4f}{t_np / t_jit:>8.1f}x")
    return results


if __name__ == "__main__":
    main()
