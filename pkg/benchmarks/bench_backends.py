"""Time each kernel under the numba and numpy backends.

    python3 benchmarks/bench_backends.py [--n 3000] [--d 6] [--repeat 5] [--json]

Per-kernel timings call both backend modules directly on the same inputs
and check that their outputs agree. The end-to-end section runs a fixed
workload in fresh interpreters with ``SUBWL_BACKEND`` set, which is how a
user switches backends.
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from subwl import kernels
from subwl.generators import random_regular

E2E = """
import time
from subwl.generators import sr25, random_regular
from subwl.wl import subgraph_wl
from subwl.oracles import count_all
gs = sr25()
g = random_regular(3000, 6, seed=2)
t0 = time.perf_counter()
for h in gs:
    subgraph_wl(h, 1)
subgraph_wl(g, 2)
count_all(g)
print(time.perf_counter() - t0)
"""


def _cases(n: int, d: int, seed: int):
    g = random_regular(n, d, seed=seed)
    rng = np.random.default_rng(seed)
    ip, ix = g.indptr, g.indices
    colors = rng.integers(0, 4, n).astype(np.uint64)
    words = rng.integers(0, 2**63, size=(n, 12), dtype=np.uint64)
    lengths = np.full(n, 12, dtype=np.int64)
    x = rng.standard_normal((n, 32))
    small = random_regular(60, 4, seed=seed)
    col = np.zeros(small.n, dtype=np.int64)
    balls = kernels.load("numpy").bfs_balls(ip, ix, np.arange(n), 2)
    return {
        "murmur3_rows": (words, lengths, 7),
        "wl_round": (ip, ix, colors, 2, 7),
        "bfs_balls": (ip, ix, np.arange(n), 2),
        "induced_batch": (ip, ix, balls[0], balls[1]),
        "refine_partition": (small.adjacency(), col),
        "csr_neighbor_sum": (ip, ix, x),
        "segment_sum": (x, np.arange(0, n + 1, 10)),
        "triangles_per_vertex": (ip, ix),
        "codegree_choose2_sum": (ip, ix),
        "eccentricities": (random_regular(400, d, seed=seed).indptr, random_regular(400, d, seed=seed).indices),
    }


def _same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return bool(np.array_equal(a, b))


def _time(fn, args, repeat: int) -> float:
    fn(*args)  # JIT compile / warm caches
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def _e2e(backend: str) -> float:
    env = dict(os.environ, SUBWL_BACKEND=backend)
    subprocess.run([sys.executable, "-c", E2E], env=env, check=True, capture_output=True)  # populate JIT cache
    out = subprocess.run([sys.executable, "-c", E2E], env=env, check=True, capture_output=True, text=True)
    return float(out.stdout.strip().splitlines()[-1])


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3000)
    ap.add_argument("--d", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-e2e", action="store_true")
    ap.add_argument("--json", action="store_true", help="print records as JSON")
    args = ap.parse_args(argv)

    nb, npy = kernels.load("numba"), kernels.load("numpy")
    records = []
    for name, call in _cases(args.n, args.d, args.seed).items():
        a, b = getattr(nb, name), getattr(npy, name)
        agree = _same(a(*call), b(*call))
        t_nb, t_np = _time(a, call, args.repeat), _time(b, call, args.repeat)
        records.append({"kernel": name, "numba_ms": t_nb * 1e3, "numpy_ms": t_np * 1e3, "speedup": t_np / t_nb, "agree": agree})
    if not args.skip_e2e:
        t_nb, t_np = _e2e("numba"), _e2e("numpy")
        records.append({"kernel": "end-to-end", "numba_ms": t_nb * 1e3, "numpy_ms": t_np * 1e3, "speedup": t_np / t_nb, "agree": True})

    if args.json:
        print(json.dumps(records, indent=2))
    else:
        print(f"{'kernel':<22}{'numba ms':>12}{'numpy ms':>12}{'speedup':>10}  agree")
        for r in records:
            print(f"{r['kernel']:<22}{r['numba_ms']:>12.3f}{r['numpy_ms']:>12.3f}{r['speedup']:>9.1f}x  {r['agree']}")
    return 0 if all(r["agree"] for r in records) else 1


if __name__ == "__main__":
    sys.exit(main())
