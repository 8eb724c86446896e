"""Growth-rate measurement for the branching solvers.

Each row records the search-tree size of one run.  A least-squares line
through ``log(nodes)`` against ``k`` gives the empirical base ``b`` in
``nodes ~ C * b**k``.
"""
from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields

import numpy as np

from .generators import vc_no_family
from .graph import ClassTag
from .nocert import build_certificate_set, default_g, solve_nocert
from .oracle import ListAssignment
from .vc import solve_vc

CSV_VERSION = 1
SOLVERS = ("vc", "brute", "nocert")


@dataclass(frozen=True)
class BenchRow:
    instance_id: str
    solver: str
    q: int
    k: int
    n: int
    seed: int
    decision: bool
    nodes: int
    top_level: int
    wall: float


def cover_enumeration(g, cover, q: int) -> tuple[bool, int]:
    """Baseline: try every proper q-coloring of ``G[X]`` in index order and
    test whether each vertex outside ``X`` keeps a free color.

    Returns the decision and the number of search nodes (partial colorings).
    """
    xs = sorted(cover)
    outside = [v for v in range(g.n) if v not in cover]
    color = {}
    nodes = 0

    def extends() -> bool:
        return all(len({color[w] for w in g.neighbors(v)}) < q for v in outside)

    def rec(i: int) -> bool:
        nonlocal nodes
        nodes += 1
        if i == len(xs):
            return extends()
        v = xs[i]
        used = {color[w] for w in g.neighbors(v) if w in color}
        for c in range(1, q + 1):
            if c in used:
                continue
            color[v] = c
            if rec(i + 1):
                return True
            del color[v]
        return False

    return rec(0), nodes


def theoretical_base(solver: str, q: int, g: int = 1) -> float:
    """Base the analysis promises for ``solver`` (q itself for brute force)."""
    if solver == "vc":
        return 2 ** 0.9183 if q == 3 else q - 1.11
    if solver == "nocert":
        e = q * g
        return (q ** e - 1) ** (1 / e)
    return float(q)


def run_instance(solver: str, q: int, k: int, seed: int, tag: str = "independent") -> BenchRow:
    g, cover = vc_no_family(k, q, seed)
    start = time.perf_counter()
    top = 0
    if solver == "vc":
        ok, _, stats = solve_vc(g, cover, q)
        nodes, top = stats.nodes_expanded, stats.top_level_subsets
    elif solver == "brute":
        ok, nodes = cover_enumeration(g, cover, q)
    elif solver == "nocert":
        ctag = ClassTag.parse(tag)
        zeta = _zeta(ctag, q)
        ok, _, stats = solve_nocert(g, ListAssignment.full(g.n, q), cover, zeta)
        nodes, top = stats.nodes_expanded, stats.colorings_enumerated
    else:
        raise ValueError(f"unknown solver {solver!r}")
    wall = time.perf_counter() - start
    return BenchRow(f"{solver}-q{q}-k{k:03d}-s{seed:04d}", solver, q, k, g.n, seed,
                    bool(ok), int(nodes), int(top), wall)


_ZETA: dict = {}


def _zeta(tag: ClassTag, q: int):
    key = (tag, q)
    if key not in _ZETA:
        _ZETA[key] = build_certificate_set(tag, q, default_g(tag))
    return _ZETA[key]


def _run(args):
    return run_instance(*args)


def run_bench(solver: str, q: int, ks, seeds, workers: int = 1,
              tag: str = "independent") -> list[BenchRow]:
    jobs = [(solver, q, k, s, tag) for k in ks for s in seeds]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            rows = list(pool.map(_run, jobs))
    else:
        rows = [_run(j) for j in jobs]
    return sorted(rows, key=lambda r: r.instance_id)


@dataclass(frozen=True)
class Fit:
    base: float
    scale: float
    r2: float

    def as_dict(self) -> dict:
        return asdict(self)


def fit_base(ks, values) -> Fit:
    """Least squares on ``log(values) = log C + k log b``."""
    x = np.asarray(ks, dtype=float)
    y = np.log(np.maximum(np.asarray(values, dtype=float), 1.0))
    if len(set(x.tolist())) < 2:
        raise ValueError("need at least two distinct k values to fit")
    slope, icpt = np.polyfit(x, y, 1)
    pred = slope * x + icpt
    ss_res = float(((y - pred) ** 2).sum())
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return Fit(math.exp(slope), math.exp(icpt), r2)


def rows_to_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"# modcolor bench csv v{CSV_VERSION}"])
    w.writerow([f.name for f in fields(BenchRow)])
    for r in rows:
        w.writerow([f"{v:.6f}" if isinstance(v, float) else v for v in asdict(r).values()])
    return buf.getvalue()
