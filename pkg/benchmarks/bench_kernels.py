"""Compare the compiled kernels with the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat 3] [--json out.json]
"""

import argparse
import json
import time

import numpy as np

from cycleturan import kernels
from cycleturan.graph import Graph, blow_up
from cycleturan.seeding import make_rng


def _random_graph(n, p, seed):
    rng = make_rng(seed)
    mat = np.triu(rng.random((n, n)) < p, 1)
    return Graph.from_matrix(mat | mat.T)


def cases():
    g30 = _random_graph(30, 0.3, 1)
    g18 = _random_graph(18, 0.5, 2)
    blow, part = blow_up(Graph.cycle(5), [6] * 5)
    c7, _ = blow_up(Graph.cycle(7), [4] * 7)
    assign = np.asarray(part.assignment, dtype=np.int32)
    side = np.zeros(300, dtype=np.int8)
    g300 = _random_graph(300, 0.05, 3)
    return [
        ("count_cycles C6, G(30, 0.3)", lambda: kernels.count_cycles(g30, 6)),
        ("count_paths P5, G(30, 0.3)", lambda: kernels.count_paths(g30, 5)),
        ("has_cycle C5 (absent), C7 blow-up n=28", lambda: kernels.has_cycle(c7, 5)),
        ("partition_count cycle, C5 blow-up", lambda: kernels.partition_count(blow, assign, 5, True)),
        ("maxcut_exact G(18, 0.5)", lambda: kernels.maxcut_exact(g18)),
        ("maxcut_local G(300, 0.05)", lambda: kernels.maxcut_local(g300, side.copy())),
        ("ex_search n=7 C5 / C3", lambda: kernels.ex_search(7, 0, 5, (3,))),
    ]


def bench(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", default=None, help="write results here")
    args = ap.parse_args(argv)
    if "cython" not in kernels.AVAILABLE:
        raise SystemExit("compiled extension not built; run pip install -e . first")
    rows = []
    print(f"{'kernel':40s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, fn in cases():
        times = {}
        for backend in ("python", "cython"):
            with kernels.use_backend(backend):
                times[backend] = bench(fn, args.repeat)
        speedup = times["python"] / times["cython"]
        rows.append({"kernel": name, **times, "speedup": speedup})
        print(f"{name:40s} {times['python']:10.4f} {times['cython']:10.4f} {speedup:8.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
