"""Compare the numba and numpy kernel backends on realistic workloads.

    python3 benchmarks/bench_kernels.py [--repeat N] [--radius R]

Workloads come from the bundled case 145 expanded to the given orbit radius:
the restricted intersection blocks the enumerator tests, the product matrix
and compatibility graph of the half-fiber classes, and the whole cnd run.
The first numba call of each kernel is excluded (compilation).
"""
import argparse
import time

import numpy as np

from enriques_nd import configs, kernels
from enriques_nd.action import expand_orbit
from enriques_nd.data_io import bundled_case
from enriques_nd.halffibers import build_hf_set
from enriques_nd.lattice import GRAM
from enriques_nd.solver import compatibility_graph, compute_cnd


def timeit(func, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        func()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads(radius):
    case = bundled_case(145)
    system = expand_orbit(case.system, case.gens, radius)
    # record every block the enumerator tests
    blocks = []
    real = configs.psd_corank

    def spy(mat, **kw):
        blocks.append(np.array(mat, dtype=np.int64))
        return real(mat, **kw)

    configs.psd_corank = spy
    try:
        hf = build_hf_set(system)
    finally:
        configs.psd_corank = real
    rows = np.array([c.klass for c in hf], dtype=np.int64)
    _, adj = compatibility_graph(hf)
    return system, blocks, rows, adj


def end_to_end(system, backend):
    old = kernels.BACKEND
    kernels.BACKEND = backend
    try:
        return compute_cnd(build_hf_set(system), backend=backend)[0]
    finally:
        kernels.BACKEND = old


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--radius", type=int, default=4)
    args = ap.parse_args()

    system, blocks, rows, adj = workloads(args.radius)
    print(f"numba available: {kernels.HAVE_NUMBA}; default backend: {kernels.BACKEND}")
    print(f"{len(system)} curves, {len(blocks)} enumerator blocks, {rows.shape[0]} classes, "
          f"{int(adj.sum()) // 2} compatible pairs")

    cases = {
        "psd_corank": lambda b: [kernels.psd_corank(m, backend=b) for m in blocks],
        "pairwise_products": lambda b: kernels.pairwise_products(rows, GRAM, backend=b),
        "max_clique": lambda b: kernels.max_clique(adj, 10, backend=b),
        "cnd end to end": lambda b: end_to_end(system, b),
    }
    backends = ["numpy"] + (["numba"] if kernels.HAVE_NUMBA else [])
    print(f"{'kernel':<20}" + "".join(f"{b:>12}" for b in backends) + "     speedup")
    for name, fn in cases.items():
        results = {b: fn(b) for b in backends}  # warm-up, also compiles
        ref = results["numpy"]
        for b in backends[1:]:
            same = np.array_equal(np.asarray(results[b]), np.asarray(ref))
            assert same, f"{name}: backends disagree"
        times = {b: timeit(lambda: fn(b), args.repeat) for b in backends}
        line = f"{name:<20}" + "".join(f"{times[b] * 1e3:>10.3f}ms" for b in backends)
        if "numba" in times:
            line += f"  {times['numpy'] / times['numba']:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
