"""Time every kernel under the numba path and the fallback path.

    python benchmarks/bench_kernels.py [--quick] [--repeat N]

Each kernel is warmed up once (numba compiles on first call), then timed
``--repeat`` times per backend; the best time is reported.
"""
import argparse
import os
import random
import time

import numpy as np

from modcolor import kernels
from modcolor.generators import random_graph, random_lists
from modcolor.graph import _edge_bits, _perm_table


def cases(quick: bool):
    rng = random.Random(0)
    n_is = 12 if quick else 20
    g = random_graph(n_is, 0.3, rng)
    closed = np.array([g.adj_mask(v) | (1 << v) for v in range(g.n)], dtype=np.int64)
    yield "independent_set_counts", f"n={n_is}", lambda: kernels.independent_set_counts(closed, g.n)

    n_ls = 20 if quick else 40
    h = random_graph(n_ls, 0.25, rng)
    lam = random_lists(n_ls, 4, rng, p_keep=0.8)
    indptr, indices = h.csr()
    masks = lam.masks()
    yield "list_color_search", f"n={n_ls}", lambda: kernels.list_color_search(indptr, indices, masks)

    n_c = 6 if quick else 7
    pairs, _, table, weights = _perm_table(n_c)
    bits = np.stack([_edge_bits(random_graph(n_c, 0.5, rng), pairs) for _ in range(50 if quick else 500)])
    yield "canonical_codes", f"n={n_c}, {len(bits)} graphs", lambda: kernels.canonical_codes(bits, table, weights)

    n_td = 10 if quick else 16
    t = random_graph(n_td, 0.3, rng)
    adj = np.array([t.adj_mask(v) for v in range(t.n)], dtype=np.int64)
    yield "treedepth_table", f"n={n_td}", lambda: kernels.treedepth_table(adj)


def timed(fn, repeat: int) -> float:
    fn()
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None) -> list[tuple]:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true", help="small inputs, for smoke tests")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    saved = os.environ.get("MODCOLOR_NUMBA")
    rows = []
    try:
        for name, size, fn in cases(args.quick):
            times = {}
            for backend, flag in (("numba", "1"), ("numpy", "0")):
                os.environ["MODCOLOR_NUMBA"] = flag
                times[backend] = timed(fn, args.repeat)
            rows.append((name, size, times["numba"], times["numpy"]))
    finally:
        if saved is None:
            os.environ.pop("MODCOLOR_NUMBA", None)
        else:
            os.environ["MODCOLOR_NUMBA"] = saved
    print(f"{'kernel':<24}{'input':<22}{'numba s':>12}{'fallback s':>12}{'speedup':>10}")
    for name, size, a, b in rows:
        print(f"{name:<24}{size:<22}{a:>12.5f}{b:>12.5f}{b / max(a, 1e-9):>9.1f}x")
    return rows


if __name__ == "__main__":
    main()
