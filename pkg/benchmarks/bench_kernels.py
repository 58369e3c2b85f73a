"""Compare the compiled and numpy kernels on representative workloads.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import time

import numpy as np

from rackdend import kernels
from rackdend.cubical import edge_index, edges, edge_word, preferred_squares
from rackdend.structures import rack_fixture


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def workloads():
    X = rack_fixture("ConjS3")
    yield ("bracket_gather ConjS3 n=5, 5 words",
           lambda impl: kernels.bracket_gather(X.table, 5, [[0, 1, 4], [2, 3], [1, 4], [0], [3, 4]], impl=impl))
    yield ("bracket_gather ConjS3 n=6, edge {}→{6}",
           lambda impl: kernels.bracket_gather(X.table, 6, [edge_word(0, 6)], impl=impl))
    R = rack_fixture("R3")
    idx = edge_index(3)
    sq = np.array([[idx[e] for e in s] for s in preferred_squares(3)], dtype=np.int64)
    yield ("trunk_labelings R3 n=3 (3^12 labelings)",
           lambda impl: kernels.trunk_labelings(R.table, len(edges(3)), sq, impl=impl))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    a = ap.parse_args()
    impls = kernels.backends()
    print(f"default backend: {kernels.BACKEND}; available: {', '.join(sorted(impls))}")
    for name, fn in workloads():
        row, ref = [], None
        for key in sorted(impls):
            t, out = _time(lambda: fn(impls[key]), a.repeat)
            if ref is None:
                ref = out
            elif not np.array_equal(ref, out):
                raise SystemExit(f"{name}: backends disagree")
            row.append(f"{key} {t * 1e3:8.2f} ms")
        print(f"{name:45s} " + "  ".join(row))


if __name__ == "__main__":
    main()
