"""Simple undirected graphs, the recognised graph classes, and modulators.

Vertices are ``0..n-1``.  A :class:`Graph` is immutable; adjacency is kept
both as frozensets and as int bitmasks since most callers want one or the
other.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

from . import kernels
from .errors import InvalidInputError, ResourceLimitError

ENUMERATION_HARD_CAP = 7


class Graph:
    __slots__ = ("n", "edges", "_nbrs", "_masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InvalidInputError(f"negative vertex count {n}")
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidInputError(f"self-loop at vertex {u}")
            norm.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges = frozenset(norm)
        nbrs = [set() for _ in range(n)]
        for u, v in norm:
            nbrs[u].add(v)
            nbrs[v].add(u)
        self._nbrs = tuple(frozenset(s) for s in nbrs)
        self._masks = tuple(sum(1 << w for w in s) for s in nbrs)

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._nbrs[v]

    def adj_mask(self, v: int) -> int:
        return self._masks[v]

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbrs[u]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        for v in range(self.n):
            indptr[v + 1] = indptr[v] + len(self._nbrs[v])
        indices = np.fromiter(
            (w for v in range(self.n) for w in sorted(self._nbrs[v])),
            dtype=np.int64, count=int(indptr[-1]))
        return indptr, indices

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            stack = [s]
            while stack:
                v = stack.pop()
                for w in self._nbrs[v]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


# -- constructors -----------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidInputError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the center at vertex 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    off = 0
    for g in graphs:
        edges.extend((u + off, v + off) for u, v in g.edges)
        off += g.n
    return Graph(off, edges)


def complement(g: Graph) -> Graph:
    return Graph(g.n, [(u, v) for u, v in itertools.combinations(range(g.n), 2)
                       if not g.has_edge(u, v)])


def join(a: Graph, b: Graph) -> Graph:
    u = disjoint_union(a, b)
    extra = [(i, a.n + j) for i in range(a.n) for j in range(b.n)]
    return Graph(u.n, list(u.edges) + extra)


# -- induced subgraphs --------------------------------------------------------

def _check_subset(g: Graph, s: Iterable[int]) -> list[int]:
    out = sorted(set(int(v) for v in s))
    if out and (out[0] < 0 or out[-1] >= g.n):
        raise InvalidInputError(f"vertex set {out} not contained in [0, {g.n})")
    return out


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by ``s`` plus the old-to-new index map (order preserving)."""
    verts = _check_subset(g, s)
    index = {v: i for i, v in enumerate(verts)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return Graph(len(verts), edges), index


def remove_vertices(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    drop = set(_check_subset(g, s))
    return induced_subgraph(g, [v for v in range(g.n) if v not in drop])


# -- graph classes ------------------------------------------------------------

class ClassTag(str, enum.Enum):
    INDEPENDENT = "independent"
    FOREST = "forest"
    LINEAR_FOREST = "linear_forest"
    PATH = "path"
    SPLIT = "split"
    UNION_SPLIT = "union_split"
    COGRAPH = "cograph"

    @classmethod
    def parse(cls, name: str) -> "ClassTag":
        key = name.strip().lower().replace("-", "_")
        aliases = {"linearforest": "linear_forest", "unionsplit": "union_split",
                   "usplit": "union_split", "vc": "independent"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise InvalidInputError(f"unknown graph class {name!r}") from None


def _is_forest(g: Graph) -> bool:
    return g.m == g.n - len(g.components())


def _is_split(g: Graph) -> bool:
    # Hammer-Simeone degree-sequence test
    deg = sorted((g.degree(v) for v in range(g.n)), reverse=True)
    if not deg:
        return True
    m = max(i + 1 for i, d in enumerate(deg) if d >= i)
    return sum(deg[:m]) == m * (m - 1) + sum(deg[m:])


def has_induced_p4(g: Graph) -> bool:
    for quad in itertools.combinations(range(g.n), 4):
        deg = []
        m = 0
        for v in quad:
            d = sum(1 for w in quad if g.has_edge(v, w))
            deg.append(d)
            m += d
        if m == 6 and sorted(deg) == [1, 1, 2, 2]:
            return True
    return False


def is_member(g: Graph, tag: ClassTag) -> bool:
    tag = ClassTag(tag)
    if tag is ClassTag.INDEPENDENT:
        return g.m == 0
    if tag is ClassTag.FOREST:
        return _is_forest(g)
    if tag is ClassTag.LINEAR_FOREST:
        return _is_forest(g) and all(g.degree(v) <= 2 for v in range(g.n))
    if tag is ClassTag.PATH:
        return is_member(g, ClassTag.LINEAR_FOREST) and g.is_connected()
    if tag is ClassTag.SPLIT:
        return _is_split(g)
    if tag is ClassTag.UNION_SPLIT:
        return all(_is_split(induced_subgraph(g, c)[0]) for c in g.components())
    if tag is ClassTag.COGRAPH:
        return not has_induced_p4(g)
    raise InvalidInputError(f"unhandled class {tag}")  # pragma: no cover


@dataclass(frozen=True)
class Modulator:
    vertices: frozenset
    target: ClassTag

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(int(v) for v in self.vertices))
        object.__setattr__(self, "target", ClassTag(self.target))

    def __len__(self):
        return len(self.vertices)


def verify_modulator(g: Graph, x: Iterable[int], tag: ClassTag) -> bool:
    rest, _ = remove_vertices(g, x)
    return is_member(rest, tag)


# -- induced isomorphism ------------------------------------------------------

def find_induced_isomorphism(h: Graph, g: Graph,
                             candidates: Iterable[int] | None = None) -> dict[int, int] | None:
    """First (lexicographic) map ``phi: S -> V(H)`` with ``G[S]`` isomorphic to ``H``.

    ``S`` ranges over ``|V(H)|``-subsets of ``candidates`` in lexicographic
    order and, for a fixed ``S``, ``phi`` over permutations of ``V(H)`` in
    lexicographic order.  Exponential in ``|V(H)|``; meant for small patterns.
    """
    cand = _check_subset(g, range(g.n) if candidates is None else candidates)
    k = h.n
    h_edges = h.m
    for s in itertools.combinations(cand, k):
        if sum(1 for a, b in itertools.combinations(s, 2) if g.has_edge(a, b)) != h_edges:
            continue
        for perm in itertools.permutations(range(k)):
            if all(g.has_edge(s[i], s[j]) == h.has_edge(perm[i], perm[j])
                   for i in range(k) for j in range(i + 1, k)):
                return {s[i]: perm[i] for i in range(k)}
    return None


def is_induced_isomorphism(h: Graph, g: Graph, phi: dict[int, int]) -> bool:
    if len(phi) != h.n or sorted(phi.values()) != list(range(h.n)):
        return False
    items = list(phi.items())
    return all(g.has_edge(a, b) == h.has_edge(pa, pb)
               for (a, pa), (b, pb) in itertools.combinations(items, 2))


# -- canonical forms and enumeration -------------------------------------------

@lru_cache(maxsize=None)
def _perm_table(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    pair_index = {p: i for i, p in enumerate(pairs)}
    perms = list(itertools.permutations(range(n)))
    table = np.empty((len(perms), len(pairs)), dtype=np.int64)
    for r, p in enumerate(perms):
        for k, (i, j) in enumerate(pairs):
            a, b = p[i], p[j]
            table[r, k] = pair_index[(a, b) if a < b else (b, a)]
    weights = np.array([1 << (len(pairs) - 1 - k) for k in range(len(pairs))], dtype=np.int64)
    return pairs, perms, table, weights


def _edge_bits(g: Graph, pairs) -> np.ndarray:
    return np.array([1 if g.has_edge(a, b) else 0 for a, b in pairs], dtype=np.uint8)


def canonical_codes(graphs: list[Graph], n: int) -> tuple[np.ndarray, np.ndarray]:
    """Minimum adjacency bitstring over all relabelings, for graphs on ``n`` vertices.

    Returns the codes and, per graph, the index of a minimising permutation
    in ``itertools.permutations(range(n))`` order.
    """
    if n > 8:
        raise ResourceLimitError(f"canonical form limited to n <= 8 (got {n})")
    pairs, _, table, weights = _perm_table(n)
    if not graphs:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    if not pairs:
        z = np.zeros(len(graphs), dtype=np.int64)
        return z, z.copy()
    bits = np.stack([_edge_bits(g, pairs) for g in graphs])
    return kernels.canonical_codes(bits, table, weights)


def canonical_form(g: Graph) -> tuple[int, int]:
    codes, _ = canonical_codes([g], g.n)
    return g.n, int(codes[0]) if g.n > 1 else 0


def graph_from_code(n: int, code: int) -> Graph:
    pairs = list(itertools.combinations(range(n), 2))
    top = len(pairs) - 1
    return Graph(n, [p for k, p in enumerate(pairs) if (code >> (top - k)) & 1])


@lru_cache(maxsize=None)
def _all_graph_codes(n: int) -> tuple[int, ...]:
    if n <= 1:
        return (0,)
    reps = [graph_from_code(n - 1, c) for c in _all_graph_codes(n - 1)]
    cands = []
    for r in reps:
        base = list(r.edges)
        for mask in range(1 << (n - 1)):
            extra = [(v, n - 1) for v in range(n - 1) if mask >> v & 1]
            cands.append(Graph(n, base + extra))
    codes, _ = canonical_codes(cands, n)
    return tuple(sorted(set(int(c) for c in codes)))


def enumerate_graphs_up_to(n_max: int, tag: ClassTag | None = None,
                           hard_cap: int = ENUMERATION_HARD_CAP) -> Iterator[Graph]:
    """One representative per isomorphism class, on 1..n_max vertices.

    Representatives are the graphs spelled by their minimum code, yielded by
    increasing order and then increasing code.  ``tag=None`` yields all graphs.
    """
    if n_max > hard_cap:
        raise ResourceLimitError(f"n_max={n_max} exceeds enumeration cap {hard_cap}")
    for n in range(1, n_max + 1):
        for code in _all_graph_codes(n):
            g = graph_from_code(n, code)
            if tag is None or is_member(g, tag):
                yield g
