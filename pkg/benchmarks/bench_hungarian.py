"""Compare the compiled and pure-Python matching kernels.

Times the certified doubled-graph solve on seeded random instances of
growing size, once per available backend, and reports the speedup.
Run: python benchmarks/bench_hungarian.py [--repeat N]
"""

import argparse
import time
from fractions import Fraction

from matchcore import bipartite
from matchcore.bipartite import double_graph, solve_bipartite
from matchcore.instances import gen_random
from matchcore.mechanism import run_mechanism

CASES = [
    # (vertices, edge probability, max weight)
    (100, Fraction(1, 2), 10),
    (200, Fraction(1, 2), 10),
    (200, Fraction(1, 2), 10**6),
    (400, Fraction(1, 2), 10**6),
    (400, Fraction(1, 4), 10**9),
    (600, Fraction(1, 2), 10**6),
]


def best_of(repeat, fn, *args):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="take the best of N runs (default 3)")
    args = parser.parse_args()

    backends = ["py"]
    if bipartite._hungarian is not None:
        backends.append("c")
    else:
        print("compiled kernel not built; timing the pure-Python kernel only")

    print(f"{'instance':>28}  {'edges':>6}  " +
          "  ".join(f"{b + ' (s)':>9}" for b in backends) +
          ("  speedup" if len(backends) == 2 else ""))
    for (n, p, mw) in CASES:
        g = gen_random(n, p, mw, seed=1)
        d = double_graph(g)
        label = f"n={n} p={p} w<={mw:g}"
        row = [f"{label:>28}", f"{g.edge_count:>6}"]
        times = {}
        for b in backends:
            times[b] = best_of(args.repeat, solve_bipartite, d, b)
            row.append(f"{times[b]:>9.4f}")
        if len(backends) == 2:
            row.append(f"{times['py'] / times['c']:>8.1f}x")
        print("  ".join(row))

    # end-to-end: the whole mechanism, auto backend
    g = gen_random(200, Fraction(1, 2), 10, seed=10)
    t = best_of(args.repeat, run_mechanism, g)
    print(f"\nfull mechanism n=200 p=1/2 (backend auto={bipartite.DEFAULT_BACKEND}): "
          f"{t:.3f} s")


if __name__ == "__main__":
    main()
