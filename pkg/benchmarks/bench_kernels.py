"""Benchmark the compiled traversal kernel against the pure-Python fallback.

Runs the same whole-ball scans on both backends, checks the outputs agree,
and prints per-node throughput.  Usage::

    python benchmarks/bench_kernels.py [--nmax 13] [--threads 4]
"""
import argparse
import time

from mdtds import _kernel_py, ball_size

try:
    from mdtds import _kernel_cy
except ImportError:
    _kernel_cy = None


def run_scan(impl, kind: str, n_gens: int, n_max: int, threads: int):
    """Whole-ball scan on one backend; returns (seconds, per-depth sums)."""
    from concurrent.futures import ThreadPoolExecutor

    if kind == "counts":
        job = lambda letter: impl.subtree_scan_mult(
            n_gens, n_max, [1] * (2 * n_gens), 1, letter)
    elif kind == "bank":
        job = lambda letter: impl.subtree_scan_mult(
            n_gens, n_max, [12, 3, 18, 2], 1, letter)
    elif kind == "circle":
        job = lambda letter: impl.subtree_scan_addmod(
            n_gens, n_max, [1, 5, 2, 4], 6, 1, letter)
    else:
        raise ValueError(kind)
    start = time.perf_counter()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(job, range(2 * n_gens)))
    else:
        parts = [job(letter) for letter in range(2 * n_gens)]
    elapsed = time.perf_counter() - start
    sums = [0] * (n_max + 1)
    for part in parts:
        for depth, value in enumerate(part):
            sums[depth] += value
    return elapsed, sums


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--nmax", type=int, default=13)
    parser.add_argument("--s", type=int, default=2)
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    nodes = ball_size(args.nmax, args.s)
    print(f"ball radius {args.nmax}, {args.s} generators: {nodes:,} nodes, "
          f"{args.threads} thread(s)\n")
    backends = [("python", _kernel_py)]
    if _kernel_cy is not None:
        backends.append(("cython", _kernel_cy))
    else:
        print("compiled kernel not built; showing the fallback only\n")

    header = f"{'scan':<8} {'backend':<8} {'seconds':>9} {'nodes/s':>12}"
    print(header)
    print("-" * len(header))
    for kind in ("counts", "bank", "circle"):
        results = {}
        for name, impl in backends:
            elapsed, sums = run_scan(impl, kind, args.s, args.nmax, args.threads)
            results[name] = (elapsed, sums)
            print(f"{kind:<8} {name:<8} {elapsed:>9.3f} {nodes / elapsed:>12,.0f}")
        if len(results) == 2:
            py_out, cy_out = results["python"][1], results["cython"][1]
            assert py_out == cy_out, f"{kind}: backend outputs differ"
            speedup = results["python"][0] / results["cython"][0]
            print(f"{'':<8} agree, speedup {speedup:.1f}x")
    print("\noutputs verified identical across backends" if len(backends) == 2
          else "")


if __name__ == "__main__":
    main()
