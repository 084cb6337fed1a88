"""Compare the compiled and pure-python pairing kernels on random inputs.

Generates random filtered complexes of increasing size, times the matrix
reduction under each available backend, and checks that both produce the
same pairing.  Run from the repository root:

    python3 benchmarks/bench_kernels.py --sizes 50 200 800 --repeats 5
"""

import argparse
import random
import statistics
import time

import numpy as np

from hyperph.complexes import downward_closure
from hyperph.hypergraph import Hyperedge, Hypergraph
from hyperph.kernels import available_backends, pair_simplices
from hyperph.persistence import _kernel_input


def _inputs_for(n_vertices: int, seed: int):
    # 3 random triples per vertex keeps density fixed while size grows
    rng = random.Random((seed, n_vertices))
    edges = []
    for t in range(3 * n_vertices):
        members = tuple(sorted(rng.sample(range(n_vertices), 3)))
        edges.append(Hyperedge(members, t))
    fc = downward_closure(Hypergraph(n_vertices, tuple(edges)))
    return _kernel_input(fc)


def _time_backend(backend: str, dims, faces, n: int, repeats: int) -> tuple[float, np.ndarray]:
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = pair_simplices(dims, faces, n, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--sizes", type=int, nargs="+", default=[20, 60, 150, 400],
        help="vertex budgets for the random complexes",
    )
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repeats per case, best is kept")
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    header = f"{'simplices':>10} " + " ".join(f"{b:>14}" for b in backends)
    if len(backends) > 1:
        header += f" {'speedup':>9}"
    print(header)

    for size in args.sizes:
        dims, faces, n = _inputs_for(size, args.seed)
        times = {}
        outputs = {}
        for backend in backends:
            times[backend], outputs[backend] = _time_backend(
                backend, dims, faces, n, args.repeats
            )
        reference = outputs[backends[0]]
        for backend in backends[1:]:
            if not np.array_equal(outputs[backend], reference):
                raise SystemExit(f"backend disagreement at size {size}")
        row = f"{n:>10} " + " ".join(f"{times[b] * 1e3:>12.3f}ms" for b in backends)
        if len(backends) > 1:
            slow = max(times.values())
            fast = min(times.values())
            row += f" {slow / fast:>8.1f}x"
        print(row)

    if len(backends) > 1:
        print("pairings agree across backends on every case")


if __name__ == "__main__":
    main()
