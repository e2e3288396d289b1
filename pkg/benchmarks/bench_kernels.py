"""Compare the compiled and pure-Python flow kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times raw max-flow calls on K_{48,50} and a random 50-regular graph, then a
full edge-connectivity certificate through each kernel.
"""

from __future__ import annotations

import argparse
import time

from p5decomp import _flowpy
from p5decomp.generators import complete_bipartite, random_regular_bipartite

try:
    from p5decomp import _flowcore
except ImportError:  # not built
    _flowcore = None


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _workloads():
    yield "K48,50", complete_bipartite(48, 50)
    yield "random 50-regular 60+60", random_regular_bipartite(60, 50, seed=0, min_connectivity=0)


def _all_flows(kernel, g):
    tails = [u for u, _ in g.edges.values()]
    heads = [v for _, v in g.edges.values()]

    def run():
        fg = kernel.FlowGraph(g.n, tails, heads)
        for t in range(1, g.n):
            fg.max_flow(0, t)

    return run


def _certificate(kernel, g):
    tails = [u for u, _ in g.edges.values()]
    heads = [v for _, v in g.edges.values()]

    def run():
        fg = kernel.FlowGraph(g.n, tails, heads)
        fg.min_over_targets(0, range(1, g.n), 48)

    return run


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    kernels = [("python", _flowpy)] + ([("cython", _flowcore)] if _flowcore else [])
    print(f"{'workload':28} {'task':22} " + " ".join(f"{name:>10}" for name, _ in kernels) + "   speedup")
    for label, g in _workloads():
        for task, make in (("max-flow 0 -> all", _all_flows), ("48-certificate", _certificate)):
            times = [_time(make(k, g), args.repeat) for _, k in kernels]
            speed = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else "       -"
            print(f"{label:28} {task:22} " + " ".join(f"{t:9.3f}s" for t in times) + f"  {speed}")


if __name__ == "__main__":
    main()
