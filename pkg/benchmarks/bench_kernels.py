"""Time the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each case runs once to warm up (JIT compilation, caches) and then
``--repeat`` times; the best time is reported. Results of both backends are
compared so a speedup never hides a wrong answer.
"""
import argparse
import time

import numpy as np

from hyperham import ExtremalSpec, Hypergraph, build, kernels
from hyperham.core import full_mask
from hyperham.solver import _pruning, block_graph


def _best(fn, repeat):
    out = fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def cases(quick):
    n = 16 if quick else 20
    h = Hypergraph.complete(n, 6)
    rng = np.random.default_rng(0)
    sparse = Hypergraph(n, 6, h.edges[rng.random(len(h)) < 0.3])
    parts = kernels.get_backend("numpy").k_subsets(n, n // 2)

    yield "k_subsets", lambda m: m.k_subsets(n, 6)
    yield "intersection_parity", lambda m: m.intersection_parity(h.edges, np.uint64(0x3FF))
    yield "subset_degree_counts d=5", lambda m: m.subset_degree_counts(sparse.edges, n, 6, 5)
    yield "half_split_pairs", lambda m: m.half_split_pairs(sparse.edges, 6, m.k_subsets(n, 3))
    small = Hypergraph(12, 4, Hypergraph.complete(12, 4).edges[::3])
    yield "odd_edge_counts", lambda m: m.odd_edge_counts(small.edges, parts[:2000])
    tiny = Hypergraph(10, 4, Hypergraph.complete(10, 4).edges[::9])
    yield "three_edges (none)", lambda m: m.three_edges(tiny.edges, 2)

    spec = ExtremalSpec("bbar", 12, 4, 3)
    hb = build(spec)
    g = block_graph(hb)
    t = 2 * hb.n // hb.k
    pr, _ = _pruning(hb, g, None, t)

    def search(m):
        total = 0
        for f in [i for i, b in enumerate(g.blocks.tolist()) if b & 1]:
            s, _, nodes = m.cycle_search(g.blocks, g.adj_ptr, g.adj_idx, hb.edges,
                                         np.uint64(full_mask(hb.n)), t, f, pr.block_parity,
                                         np.uint64(0), 0, pr.feas, 3, 3, False, 0)
            total += int(nodes)
        return total

    yield "cycle_search bbar(12,4,3) unpruned", search


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller inputs")
    args = ap.parse_args()
    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    nb, npy = kernels.get_backend("numba"), kernels.get_backend("numpy")
    print(f"{'kernel':38s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}")
    for name, fn in cases(args.quick):
        t_nb, r_nb = _best(lambda: fn(nb), args.repeat)
        t_np, r_np = _best(lambda: fn(npy), args.repeat)
        flag = "" if _same(r_nb, r_np) else "  MISMATCH"
        print(f"{name:38s} {t_nb:10.4f} {t_np:10.4f} {t_np / max(t_nb, 1e-9):7.1f}x{flag}")


if __name__ == "__main__":
    main()
