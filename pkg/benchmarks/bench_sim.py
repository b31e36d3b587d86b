"""Time the numba and numpy round kernels on the same workload.

    python benchmarks/bench_sim.py --rounds 1000000 --n 10 --k 5
"""

import argparse
import statistics
import time

import numpy as np

from aoi_ra import _rng
from aoi_ra._kernels import CODE_FSA, CODE_RTA, CODE_SA, run_rounds

CODES = {"sa": CODE_SA, "fsa": CODE_FSA, "rta": CODE_RTA}


def time_backend(backend, code, keys, k, p, rounds, repeat):
    run_rounds(code, keys, k, p, 0, 0, 1000, backend)  # compile / warm caches
    samples = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = run_rounds(code, keys, k, p, 0, 0, rounds, backend)
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rounds", type=int, default=1_000_000)
    ap.add_argument("--n", type=int, default=10)
    ap.add_argument("--k", type=int, default=5)
    ap.add_argument("--p", type=float, default=0.5)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--protocols", nargs="+", default=["sa", "fsa", "rta"], choices=sorted(CODES))
    args = ap.parse_args()

    keys = _rng.stream_keys(1, args.n)
    print(f"{'protocol':<9}{'numba s':>10}{'numpy s':>10}{'speedup':>9}  Mrounds/s (numba)  identical")
    for proto in args.protocols:
        k = 1 if proto == "sa" else args.k
        p = min(args.p, 1.0 / args.n) if proto == "sa" else args.p
        t_nb, a = time_backend("numba", CODES[proto], keys, k, p, args.rounds, args.repeat)
        t_np, b = time_backend("numpy", CODES[proto], keys, k, p, args.rounds, args.repeat)
        same = all(np.array_equal(x, y) for x, y in zip(a, b))
        print(f"{proto:<9}{t_nb:>10.3f}{t_np:>10.3f}{t_np / t_nb:>8.1f}x  {args.rounds / t_nb / 1e6:>17.1f}  {same}")


if __name__ == "__main__":
    main()
