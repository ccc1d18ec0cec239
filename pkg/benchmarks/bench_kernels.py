#!/usr/bin/env python3
"""Micro-benchmark of the four hot kernels, run against both lanes: the
compiled extension and the pure Python fallback.

Workloads are seeded and identical across lanes, and each kernel's output
is checked for agreement between lanes before any timing is reported.
Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--quick]
"""

import argparse
import math
import sys
import timeit
from array import array

from conespan import _kernels
from conespan._kernels import pure
from conespan.geometry import TWO_PI, build_udg
from conespan.instances import SplitMix64, gen_uniform

try:
    from conespan._kernels import _fast
except ImportError:  # pragma: no cover - source-only installs
    _fast = None


def make_workloads(quick: bool):
    n_pairs = 120 if quick else 700
    n_fw = 48 if quick else 160
    n_dirs = 2_000 if quick else 50_000
    k = 9
    theta = TWO_PI / k

    rng = SplitMix64(20_260_816)
    directions = [
        (rng.next_double() * 2.0 - 1.0, rng.next_double() * 2.0 - 1.0)
        for _ in range(n_dirs)
    ]
    directions = [(dx, dy) for dx, dy in directions if (dx, dy) != (0.0, 0.0)]

    points = gen_uniform(n_pairs, 3.0 * math.sqrt(n_pairs / 60.0), 7)
    g = build_udg(points, 1.0)
    xs, ys = points.coordinate_arrays()
    ids = array("q", points.ids)
    indptr, indices = g.adjacency_csr()

    fw_points = gen_uniform(n_fw, 3.0 * math.sqrt(n_fw / 60.0), 8)
    fw_g = build_udg(fw_points, 1.0)
    m = len(fw_points)
    flat = array("d", [math.inf]) * (m * m)
    for i in range(m):
        flat[i * m + i] = 0.0
    for u, v in fw_g.edges:
        iu, iv = fw_points.index_of(u), fw_points.index_of(v)
        w = fw_points.dist(u, v)
        flat[iu * m + iv] = w
        flat[iv * m + iu] = w

    def bench_cone_of(lane):
        def run():
            fn = lane.cone_of
            acc = 0
            for dx, dy in directions:
                acc += fn(dx, dy, k, theta, TWO_PI)
            return acc

        return run

    def bench_pairs(lane):
        return lambda: lane.pairs_in_range(xs, ys, 1.0)

    def bench_yao(lane):
        return lambda: lane.yao_select(xs, ys, ids, indptr, indices, k, theta, TWO_PI)

    def bench_fw(lane):
        def run():
            work = array("d", flat)
            lane.floyd_warshall(work, m)
            return work

        return run

    return [
        (f"cone_of ({len(directions)} calls, k={k})", bench_cone_of),
        (f"pairs_in_range (n={n_pairs})", bench_pairs),
        (f"yao_select (n={n_pairs}, k={k})", bench_yao),
        (f"floyd_warshall (n={n_fw})", bench_fw),
    ]


def check_agreement(factory):
    pure_result = factory(pure)()
    fast_result = factory(_fast)()
    if isinstance(pure_result, (int, float)):
        same = pure_result == fast_result
    elif isinstance(pure_result, array):
        same = len(pure_result) == len(fast_result) and all(
            a == b for a, b in zip(pure_result, fast_result)
        )
    else:
        same = list(pure_result) == list(fast_result)
    if not same:
        raise SystemExit("lane outputs disagree; refusing to time")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5, help="timing repeats (best wins)")
    parser.add_argument("--quick", action="store_true", help="small workloads")
    args = parser.parse_args(argv)

    lanes = [("pure", pure)]
    if _fast is not None:
        lanes.append(("compiled", _fast))
    print(f"active lane for normal imports: {_kernels.active_lane()}")
    print(f"python {sys.version.split()[0]}; best of {args.repeat} runs\n")

    header = f"{'kernel':<34} " + " ".join(f"{name:>12}" for name, _ in lanes)
    if len(lanes) == 2:
        header += f" {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for label, factory in make_workloads(args.quick):
        if _fast is not None:
            check_agreement(factory)
        times = []
        for _, lane in lanes:
            run = factory(lane)
            times.append(min(timeit.repeat(run, number=1, repeat=args.repeat)))
        row = f"{label:<34} " + " ".join(f"{t * 1e3:>10.3f}ms" for t in times)
        if len(times) == 2:
            row += f" {times[0] / times[1]:>8.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
