"""q-coloring parameterised by a given vertex cover.

Some color class of any q-coloring meets the cover ``X`` in at most
``floor(k/q)`` vertices.  We guess that intersection ``S``, grow it by every
non-cover vertex without a neighbor in ``S``, drop the grown class and
recurse with one color fewer.  ``q <= 2`` is decided directly.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import asdict, dataclass
from typing import Callable, Iterable

from .errors import InvalidInputError
from .graph import ClassTag, Graph, induced_subgraph, verify_modulator


@dataclass
class BranchStats:
    nodes_expanded: int = 0
    subsets_enumerated: int = 0
    depth: int = 0
    top_level_subsets: int = 0

    def merge(self, other: "BranchStats") -> "BranchStats":
        out = type(self)()
        for k, v in asdict(self).items():
            w = getattr(other, k)
            setattr(out, k, max(v, w) if k == "depth" else v + w)
        return out

    def as_dict(self) -> dict:
        return asdict(self)


def is_bipartite(g: Graph) -> tuple[bool, tuple | None]:
    """BFS 2-coloring per component; colors are 1 and 2."""
    color = [0] * g.n
    for s in range(g.n):
        if color[s]:
            continue
        color[s] = 1
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if not color[w]:
                    color[w] = 3 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return False, None
    return True, tuple(color)


BranchHook = Callable[[Graph, tuple, frozenset], None]


def solve_vc(g: Graph, cover: Iterable[int], q: int,
             on_branch: BranchHook | None = None) -> tuple[bool, tuple | None, BranchStats]:
    """Decide q-colorability of ``g`` given a vertex cover; return a witness on Yes.

    ``on_branch(graph, S, S_ext)`` is called for every independent guess in
    the current (relabelled) subgraph, before recursing.
    """
    x = frozenset(int(v) for v in cover)
    if q < 1:
        raise InvalidInputError(f"q must be >= 1, got {q}")
    if any(not 0 <= v < g.n for v in x):
        raise InvalidInputError("vertex cover contains out-of-range vertices")
    if not verify_modulator(g, x, ClassTag.INDEPENDENT):
        raise InvalidInputError("given vertex set is not a vertex cover")
    stats = BranchStats()
    coloring = _solve(g, x, q, 1, stats, on_branch)
    return coloring is not None, coloring, stats


def _solve(g, x, q, depth, stats, hook):
    stats.nodes_expanded += 1
    stats.depth = max(stats.depth, depth)
    if q == 1:
        return (1,) * g.n if g.m == 0 else None
    if q == 2:
        ok, col = is_bipartite(g)
        return col if ok else None
    xs = sorted(x)
    outside = [v for v in range(g.n) if v not in x]
    for size in range(len(xs) // q + 1):
        for s in itertools.combinations(xs, size):
            stats.subsets_enumerated += 1
            if depth == 1:
                stats.top_level_subsets += 1
            if any(g.has_edge(a, b) for a, b in itertools.combinations(s, 2)):
                continue
            s_mask = 0
            for v in s:
                s_mask |= g.adj_mask(v)
            ext = frozenset(s) | frozenset(v for v in outside if not (s_mask >> v) & 1)
            if hook is not None:
                hook(g, s, ext)
            rest = [v for v in range(g.n) if v not in ext]
            sub, index = induced_subgraph(g, rest)
            sub_x = frozenset(index[v] for v in x if v in index)
            col = _solve(sub, sub_x, q - 1, depth + 1, stats, hook)
            if col is not None:
                # the guessed class takes the freed color q
                out = [q] * g.n
                for v, i in index.items():
                    out[v] = col[i]
                return tuple(out)
    return None
