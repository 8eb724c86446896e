"""Ground-truth solvers: brute-force list coloring, inclusion-exclusion
chromatic number, the palette-clique reduction, deficiency, and
No-subinstance minimisation.  Every other module is checked against these.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import InvalidInputError, ResourceLimitError
from .graph import Graph, induced_subgraph

DEFAULT_BUDGET = 50_000_000
CHROMATIC_CAP = 24
MAX_PALETTE = 62

Coloring = tuple  # per-vertex color, 1-based


def default_budget() -> int:
    raw = os.environ.get("MODCOLOR_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class ListAssignment:
    q: int
    lists: tuple

    def __post_init__(self):
        if self.q < 0:
            raise InvalidInputError(f"palette size must be non-negative, got {self.q}")
        lists = tuple(frozenset(int(c) for c in l) for l in self.lists)
        for v, l in enumerate(lists):
            bad = [c for c in l if not 1 <= c <= self.q]
            if bad:
                raise InvalidInputError(f"list of vertex {v} has colors {sorted(bad)} outside [1..{self.q}]")
        object.__setattr__(self, "lists", lists)

    @classmethod
    def full(cls, n: int, q: int) -> "ListAssignment":
        return cls(q, [range(1, q + 1)] * n)

    def __len__(self):
        return len(self.lists)

    def __getitem__(self, v):
        return self.lists[v]

    def restrict(self, vertices: Sequence[int]) -> "ListAssignment":
        return ListAssignment(self.q, [self.lists[v] for v in vertices])

    def masks(self) -> np.ndarray:
        return np.array([sum(1 << (c - 1) for c in l) for l in self.lists], dtype=np.int64)

    def is_full(self) -> bool:
        return all(len(l) == self.q for l in self.lists)


@dataclass(frozen=True)
class Subinstance:
    """Induced subinstance on host vertices ``vertices`` with unchanged lists."""
    vertices: tuple
    graph: Graph
    lists: ListAssignment

    @classmethod
    def of(cls, g: Graph, lam: ListAssignment, vertices: Iterable[int]) -> "Subinstance":
        verts = tuple(sorted(set(vertices)))
        sub, _ = induced_subgraph(g, verts)
        return cls(verts, sub, lam.restrict(verts))


def _check_instance(g: Graph, lam: ListAssignment):
    if len(lam) != g.n:
        raise InvalidInputError(f"{len(lam)} lists for a graph on {g.n} vertices")
    if lam.q > MAX_PALETTE:
        raise InvalidInputError(f"palette size {lam.q} exceeds {MAX_PALETTE}")


# -- validators -----------------------------------------------------------------

def coloring_violation(g: Graph, coloring: Sequence[int],
                       lam: ListAssignment | None = None) -> str | None:
    """Describe the first violated constraint, or ``None`` if the coloring is valid."""
    if len(coloring) != g.n:
        return f"coloring has {len(coloring)} entries for {g.n} vertices"
    for v, c in enumerate(coloring):
        if lam is not None and c not in lam[v]:
            return f"vertex {v + 1} has color {c} not on its list {sorted(lam[v])}"
        if lam is None and c < 1:
            return f"vertex {v + 1} has invalid color {c}"
    for u, v in sorted(g.edges):
        if coloring[u] == coloring[v]:
            return f"edge {u + 1}-{v + 1} is monochromatic (color {coloring[u]})"
    return None


def is_proper_list_coloring(g: Graph, coloring: Sequence[int],
                            lam: ListAssignment | None = None) -> bool:
    return coloring_violation(g, coloring, lam) is None


# -- brute force ------------------------------------------------------------------

def search_list_coloring(g: Graph, lam: ListAssignment,
                         budget: int | None = None) -> tuple[Coloring | None, int]:
    """Backtracking list coloring; returns ``(coloring or None, nodes)``."""
    _check_instance(g, lam)
    if g.n == 0:
        return (), 0
    budget = default_budget() if budget is None else budget
    indptr, indices = g.csr()
    status, color, nodes = kernels.list_color_search(indptr, indices, lam.masks(), budget)
    if status == kernels.BUDGET:
        raise ResourceLimitError(f"list-coloring search exceeded {budget} nodes")
    if status == kernels.UNSAT:
        return None, nodes
    return tuple(int(c) for c in color), nodes


def brute_force_list_color(g: Graph, lam: ListAssignment,
                           budget: int | None = None) -> Coloring | None:
    return search_list_coloring(g, lam, budget)[0]


def is_list_colorable(g: Graph, lam: ListAssignment, budget: int | None = None) -> bool:
    return brute_force_list_color(g, lam, budget) is not None


def is_colorable(g: Graph, q: int, budget: int | None = None) -> bool:
    return is_list_colorable(g, ListAssignment.full(g.n, q), budget)


def brute_force_chromatic_number(g: Graph) -> int:
    """Smallest q with a q-coloring, by plain backtracking.

    A vertex may only open the next unused color, which removes the q!
    relabellings of each partial coloring.
    """
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    q = 0
    while not _colorable_canonical(g, order, q):
        q += 1
    return q


def _colorable_canonical(g: Graph, order, q: int) -> bool:
    color = [0] * g.n

    def rec(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        taken = {color[w] for w in g.neighbors(v)}
        for c in range(1, min(q, used + 1) + 1):
            if c not in taken:
                color[v] = c
                if rec(i + 1, max(used, c)):
                    return True
        color[v] = 0
        return False

    return rec(0, 0)


# -- inclusion-exclusion ------------------------------------------------------------

def chromatic_number_ie(g: Graph, cap: int = CHROMATIC_CAP) -> int:
    """Chromatic number as the least k with sum_S (-1)^(n-|S|) i(S)^k > 0.

    ``i(S)`` is the number of independent sets (empty one included) of
    ``G[S]``, tabulated over all subsets by the kernel.  Subsets sharing a
    count are merged before the exact big-integer power sum.
    """
    n = g.n
    if n > cap:
        raise ResourceLimitError(f"chromatic_number_ie limited to {cap} vertices (got {n})")
    if n == 0:
        return 0
    closed = [g.adj_mask(v) | (1 << v) for v in range(n)]
    counts, parity = kernels.independent_set_counts(closed, n)
    even = parity == (n & 1)
    pos = np.bincount(counts[even], minlength=1)
    neg = np.bincount(counts[~even], minlength=1)
    size = max(len(pos), len(neg))
    weight = np.zeros(size, dtype=np.int64)
    weight[:len(pos)] += pos
    weight[:len(neg)] -= neg
    terms = [(int(v), int(weight[v])) for v in np.nonzero(weight)[0]]
    for k in range(1, n + 1):
        if sum(w * v ** k for v, w in terms) > 0:
            return k
    raise AssertionError("inclusion-exclusion found no k <= n")  # pragma: no cover


# -- reductions and measures ------------------------------------------------------------

def list_to_coloring(g: Graph, lam: ListAssignment) -> tuple[Graph, list[int]]:
    """Palette-clique reduction.

    Appends a ``q``-clique (vertex ``n + c - 1`` stands for color ``c``) and
    joins each original vertex to the palette vertices of colors missing
    from its list.  Returns the graph and the palette vertex ids.
    """
    _check_instance(g, lam)
    q = lam.q
    if q < 1:
        raise InvalidInputError("palette clique needs q >= 1")
    n = g.n
    palette = [n + c - 1 for c in range(1, q + 1)]
    edges = list(g.edges)
    edges += [(palette[a], palette[b]) for a in range(q) for b in range(a + 1, q)]
    for v in range(n):
        edges += [(v, n + c - 1) for c in range(1, q + 1) if c not in lam[v]]
    return Graph(n + q, edges), palette


def deficiency(g: Graph, lam: ListAssignment) -> int:
    _check_instance(g, lam)
    return sum(lam.q - len(l) for l in lam.lists)


def minimize_no_instance(g: Graph, lam: ListAssignment,
                         budget: int | None = None) -> Subinstance:
    """Vertex-minimal No-subinstance by one greedy pass in ascending order.

    One pass suffices: a vertex kept at some point stays necessary, because
    dropping it then gave a Yes-instance and subinstances of Yes are Yes.
    """
    if is_list_colorable(g, lam, budget):
        raise InvalidInputError("minimize_no_instance needs a No-instance")
    keep = list(range(g.n))
    for v in range(g.n):
        trial = [u for u in keep if u != v]
        sub = Subinstance.of(g, lam, trial)
        if not is_list_colorable(sub.graph, sub.lists, budget):
            keep = trial
    return Subinstance.of(g, lam, keep)
