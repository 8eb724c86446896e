"""Treedepth decompositions and No-certificate marking along them."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels
from .errors import InvalidInputError, ResourceLimitError
from .graph import Graph, induced_subgraph
from .oracle import (ListAssignment, Subinstance, chromatic_number_ie,
                     is_list_colorable)

EXACT_CAP = 16


@dataclass(frozen=True)
class TreedepthDecomposition:
    """Rooted forest on the vertices given as a parent array (``None`` = root)."""
    parent: tuple

    def __post_init__(self):
        object.__setattr__(self, "parent", tuple(None if p is None else int(p) for p in self.parent))
        n = len(self.parent)
        for v, p in enumerate(self.parent):
            if p is not None and not 0 <= p < n:
                raise InvalidInputError(f"parent {p} of vertex {v} out of range")
        for v in range(n):
            seen = 0
            u = v
            while u is not None:
                seen += 1
                if seen > n:
                    raise InvalidInputError("parent map contains a cycle")
                u = self.parent[u]

    @property
    def n(self) -> int:
        return len(self.parent)

    def ancestors(self, v: int) -> list[int]:
        out = []
        u = self.parent[v]
        while u is not None:
            out.append(u)
            u = self.parent[u]
        return out

    @property
    def depth(self) -> int:
        return max((len(self.ancestors(v)) + 1 for v in range(self.n)), default=0)

    def roots(self) -> list[int]:
        return [v for v, p in enumerate(self.parent) if p is None]

    def children(self) -> list[list[int]]:
        ch = [[] for _ in range(self.n)]
        for v, p in enumerate(self.parent):
            if p is not None:
                ch[p].append(v)
        return ch

    def violation(self, g: Graph) -> str | None:
        if g.n != self.n:
            return f"decomposition has {self.n} vertices, graph has {g.n}"
        anc = [set(self.ancestors(v)) for v in range(self.n)]
        for u, v in sorted(g.edges):
            if u not in anc[v] and v not in anc[u]:
                return f"edge {u + 1}-{v + 1} joins two vertices that are not ancestor-related"
        return None

    def is_valid_for(self, g: Graph) -> bool:
        return self.violation(g) is None

    def restrict(self, vertices: Iterable[int]) -> "TreedepthDecomposition":
        """Induced decomposition on ``vertices``, relabelled like ``induced_subgraph``."""
        verts = sorted(set(vertices))
        index = {v: i for i, v in enumerate(verts)}
        parent = []
        for v in verts:
            up = next((a for a in self.ancestors(v) if a in index), None)
            parent.append(None if up is None else index[up])
        return TreedepthDecomposition(tuple(parent))


def _masks(g: Graph) -> list[int]:
    return [g.adj_mask(v) for v in range(g.n)]


def exact_treedepth(g: Graph, cap: int = EXACT_CAP) -> tuple[int, TreedepthDecomposition]:
    """Treedepth via ``td(C) = 1 + min_v td(C - v)`` on every connected vertex subset.

    The subset table is built per connected component, so ``cap`` bounds the
    largest component rather than the whole graph.
    """
    parent: list = [None] * g.n
    best = 0
    for comp in g.components():
        if len(comp) > cap:
            raise ResourceLimitError(f"component of {len(comp)} vertices exceeds exact cap {cap}")
        sub, _ = induced_subgraph(g, comp)
        masks = _masks(sub)
        td, root = kernels.treedepth_table(masks)
        full = (1 << sub.n) - 1
        best = max(best, int(td[full]))
        stack = [(full, None)]
        while stack:
            s, par = stack.pop()
            for c in _split_components(masks, s):
                r = int(root[c])
                parent[comp[r]] = None if par is None else comp[par]
                if c ^ (1 << r):
                    stack.append((c ^ (1 << r), r))
    return best, TreedepthDecomposition(tuple(parent))


def _split_components(masks: Sequence[int], s: int) -> list[int]:
    out = []
    while s:
        low = s & -s
        comp = frontier = low
        while frontier:
            b = frontier & -frontier
            frontier ^= b
            nb = masks[b.bit_length() - 1] & s & ~comp
            comp |= nb
            frontier |= nb
        out.append(comp)
        s &= ~comp
    return out


def dfs_treedepth(g: Graph) -> TreedepthDecomposition:
    """DFS forest from the lowest vertex of each component, neighbors ascending."""
    parent: list = [None] * g.n
    seen = [False] * g.n
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack = [(s, iter(sorted(g.neighbors(s))))]
        while stack:
            v, it = stack[-1]
            for w in it:
                if not seen[w]:
                    seen[w] = True
                    parent[w] = v
                    stack.append((w, iter(sorted(g.neighbors(w)))))
                    break
            else:
                stack.pop()
    return TreedepthDecomposition(tuple(parent))


def prune_to_q_plus_1_colorable(g: Graph, lam: ListAssignment) -> Subinstance:
    """Drop lowest-index vertices until the graph (lists ignored) is (q+1)-colorable.

    Each removal lowers the chromatic number by at most one, so a graph that
    was not (q+1)-colorable stays at least (q+1)-chromatic and hence No.
    """
    if is_list_colorable(g, lam):
        raise InvalidInputError("prune_to_q_plus_1_colorable needs a No-instance")
    keep = list(range(g.n))
    while chromatic_number_ie(induced_subgraph(g, keep)[0]) > lam.q + 1:
        keep = keep[1:]
    return Subinstance.of(g, lam, keep)


def marking_bound(q: int, t: int) -> int:
    """Largest marked set for depth ``t``: solves ``h(t) = q*h(t-1) + 1, h(1) = 1``."""
    if t <= 0:
        return 0
    if q == 1:
        return t
    return (q ** t - 1) // (q - 1)


def mark_no_certificate(g: Graph, lam: ListAssignment,
                        decomposition: TreedepthDecomposition) -> frozenset:
    """Mark ``M`` with ``(G[M], lam|M)`` still No and ``|M| <= marking_bound(q, depth)``.

    Take the first tree (by root index) whose vertex set is a No-instance,
    mark its root ``r`` and, for every color ``c`` on r's list, recurse into
    the tree minus ``r`` with ``c`` removed from the lists of r's neighbors.
    """
    if len(lam) != g.n:
        raise InvalidInputError("list count does not match the graph")
    err = decomposition.violation(g)
    if err:
        raise InvalidInputError(f"invalid treedepth decomposition: {err}")
    if is_list_colorable(g, lam):
        raise InvalidInputError("mark_no_certificate needs a No-instance")
    children = decomposition.children()
    lists = {v: frozenset(lam[v]) for v in range(g.n)}
    return frozenset(_mark(g, lam.q, lists, decomposition.roots(), children))


def _subtree(v: int, children) -> list[int]:
    out = [v]
    stack = [v]
    while stack:
        u = stack.pop()
        out.extend(children[u])
        stack.extend(children[u])
    return sorted(out)


def _mark(g, q, lists, roots, children) -> set:
    for r in sorted(roots):
        verts = _subtree(r, children)
        sub, _ = induced_subgraph(g, verts)
        if is_list_colorable(sub, ListAssignment(q, [lists[v] for v in verts])):
            continue
        marked = {r}
        for c in sorted(lists[r]):
            reduced = dict(lists)
            for w in g.neighbors(r):
                if w in reduced:
                    reduced[w] = reduced[w] - {c}
            below = {v: reduced[v] for v in verts if v != r}
            marked |= _mark(g, q, below, children[r], children)
        return marked
    raise InvalidInputError("no tree of the decomposition is a No-instance")  # pragma: no cover
