"""q-list-coloring on F+kv graphs for classes with small No-certificates.

The solver branches on partial colorings of the modulator ``X``.  Before
each branching it looks for a *blocking configuration*: an induced copy of a
small No-instance ``(H, L_H)`` inside ``G - X`` together with sets
``X_1..X_q`` of modulator vertices that, colored ``c`` on ``X_c``, would
strip every list down into ``L_H``.  That one coloring of ``X_1 u .. u X_q``
can never extend, so it is skipped; every other proper coloring is
recursed on with the colored vertices removed.  When no configuration
exists any coloring of ``G[X]`` extends to ``G - X`` (given a complete
certificate set), so the question reduces to ``G[X]``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .errors import InvalidInputError, ResourceLimitError
from .graph import (ClassTag, Graph, enumerate_graphs_up_to, induced_subgraph,
                    remove_vertices, verify_modulator)
from .oracle import (ListAssignment, brute_force_list_color, chromatic_number_ie,
                     is_list_colorable, list_to_coloring)
from .vc import BranchStats

DEFAULT_G = {ClassTag.INDEPENDENT: 1}
MAX_G = 4
ENUMERATION_BUDGET = 2_000_000


def default_g(tag: ClassTag) -> int:
    return DEFAULT_G.get(ClassTag(tag), 3)


@dataclass(frozen=True)
class NoCertificateSet:
    tag: ClassTag
    q: int
    g: int
    members: tuple  # (Graph, ListAssignment) pairs, pairwise non-isomorphic
    minimal_only: bool = True

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def _automorphisms(h: Graph) -> list[tuple]:
    return [p for p in itertools.permutations(range(h.n))
            if all(h.has_edge(p[u], p[v]) for u, v in h.edges)]


def _list_key(lists: tuple, autos: list[tuple]) -> tuple:
    keys = []
    for p in autos:
        out = [None] * len(lists)
        for v, l in enumerate(lists):
            out[p[v]] = tuple(sorted(l))
        keys.append(tuple(out))
    return min(keys)


def _is_vertex_minimal(h: Graph, lam: ListAssignment) -> bool:
    for v in range(h.n):
        rest = [u for u in range(h.n) if u != v]
        sub, _ = induced_subgraph(h, rest)
        if not is_list_colorable(sub, lam.restrict(rest)):
            return False
    return True


def build_certificate_set(tag: ClassTag, q: int, g: int, minimal_only: bool = True,
                          max_g: int = MAX_G,
                          budget: int = ENUMERATION_BUDGET) -> NoCertificateSet:
    """All No-instances ``(H, L_H)`` with ``H`` in the class and ``|V(H)| <= g``.

    Lists range over every subset of ``[q]``.  Members are deduplicated up to
    isomorphism preserving lists.  With ``minimal_only`` only vertex-minimal
    No-instances are kept, which loses nothing for the solver since every
    No-instance contains a minimal one of at most the same size.
    """
    tag = ClassTag(tag)
    if q < 1 or g < 1:
        raise InvalidInputError(f"need q >= 1 and g >= 1 (got q={q}, g={g})")
    if g > max_g:
        raise ResourceLimitError(f"g={g} exceeds the enumeration cap {max_g}")
    graphs = list(enumerate_graphs_up_to(g, tag))
    total = sum((1 << q) ** h.n for h in graphs)
    if total > budget:
        raise ResourceLimitError(f"{total} list assignments exceed the budget {budget}")
    subsets = [frozenset(c for c in range(1, q + 1) if mask >> (c - 1) & 1)
               for mask in range(1 << q)]
    members = []
    for h in graphs:
        autos = _automorphisms(h)
        seen = set()
        for lists in itertools.product(subsets, repeat=h.n):
            lam = ListAssignment(q, lists)
            if is_list_colorable(h, lam):
                continue
            if minimal_only and not _is_vertex_minimal(h, lam):
                continue
            key = _list_key(lists, autos)
            if key in seen:
                continue
            seen.add(key)
            members.append((h, ListAssignment(q, [frozenset(k) for k in key])))
    return NoCertificateSet(tag, q, g, tuple(members), minimal_only)


@dataclass(frozen=True)
class BlockingConfiguration:
    member: int
    vertices: tuple          # G' inside G - X, ascending
    phi: tuple               # phi[i] = H-vertex of vertices[i]
    blockers: tuple          # blockers[c - 1] = X_c

    @property
    def cover(self) -> frozenset:
        return frozenset().union(*self.blockers)

    def skipped_coloring(self) -> dict[int, int]:
        """The single coloring of the cover that cannot extend: ``X_c -> c``."""
        return {w: c for c, xc in enumerate(self.blockers, start=1) for w in xc}


def _embeddings(h: Graph, g: Graph, candidates: list[int]) -> list[tuple[tuple, tuple]]:
    out = []
    k = h.n
    for s in itertools.combinations(candidates, k):
        if sum(1 for a, b in itertools.combinations(s, 2) if g.has_edge(a, b)) != h.m:
            continue
        for perm in itertools.permutations(range(k)):
            if all(g.has_edge(s[i], s[j]) == h.has_edge(perm[i], perm[j])
                   for i in range(k) for j in range(i + 1, k)):
                out.append((s, perm))
    return out


def _assign_blockers(g: Graph, pairs: list, color: dict) -> bool:
    # every w receives one color and the blocker coloring is proper,
    # otherwise the skipped coloring would not be among those enumerated
    if not pairs:
        return True
    (_, c, cands), rest = pairs[0], pairs[1:]
    for w in cands:
        have = color.get(w)
        if have is not None:
            if have == c and _assign_blockers(g, rest, color):
                return True
            continue
        if any(color.get(u) == c for u in g.neighbors(w)):
            continue
        color[w] = c
        if _assign_blockers(g, rest, color):
            return True
        del color[w]
    return False


def find_blocking_configuration(g: Graph, lam: ListAssignment, x: Iterable[int],
                                zeta: NoCertificateSet,
                                stats: BranchStats | None = None,
                                validate: bool = True) -> BlockingConfiguration | None:
    """First configuration in (member, G', phi) lexicographic order, or ``None``.

    Blockers are picked per (vertex, color) pair among the vertex's modulator
    neighbors holding that color, smallest index first, subject to each
    blocker getting a single color and no two adjacent blockers sharing one.
    """
    x = frozenset(int(v) for v in x)
    if validate:
        if len(lam) != g.n:
            raise InvalidInputError("list count does not match the graph")
        if not verify_modulator(g, x, zeta.tag):
            raise InvalidInputError(f"X is not a modulator to {zeta.tag.value}")
    outside = [v for v in range(g.n) if v not in x]
    blockable = {}
    for v in outside:
        nx = sorted(w for w in g.neighbors(v) if w in x)
        blockable[v] = {c: [w for w in nx if c in lam[w]] for c in range(1, lam.q + 1)}
    cache = {}
    for idx, (h, lam_h) in enumerate(zeta.members):
        if h not in cache:
            cache[h] = _embeddings(h, g, outside)
        for s, perm in cache[h]:
            if stats is not None:
                stats.subsets_enumerated += 1
            pairs = []
            for i, v in enumerate(s):
                for c in sorted(lam[v] - lam_h[perm[i]]):
                    cands = blockable[v][c]
                    if not cands:
                        break
                    pairs.append((v, c, cands))
                else:
                    continue
                break
            else:
                color = {}
                if _assign_blockers(g, pairs, color):
                    blockers = tuple(frozenset(w for w, c in color.items() if c == col)
                                     for col in range(1, lam.q + 1))
                    return BlockingConfiguration(idx, tuple(s), tuple(perm), blockers)
    return None


@dataclass
class NoCertStats(BranchStats):
    colorings_enumerated: int = 0
    skipped_colorings: int = 0
    line7_calls: int = 0
    line7_fallbacks: int = 0
    modulator_sizes: list = field(default_factory=list)

    def as_dict(self) -> dict:
        d = super().as_dict()
        d.pop("modulator_sizes", None)
        return d


SkipHook = Callable[[Graph, ListAssignment, frozenset, BlockingConfiguration, dict], None]
Line7Hook = Callable[[Graph, ListAssignment, frozenset, bool], None]


def solve_nocert(g: Graph, lam: ListAssignment, x: Iterable[int], zeta: NoCertificateSet,
                 on_skip: SkipHook | None = None,
                 on_line7: Line7Hook | None = None) -> tuple[bool, tuple | None, NoCertStats]:
    """Decide q-list-colorability of ``(g, lam)`` given a modulator ``x`` to ``zeta.tag``.

    Hooks see the current recursive subinstance (relabelled vertices).
    ``on_skip`` receives the configuration and the skipped coloring;
    ``on_line7`` receives whether ``G[X]`` was found colorable.
    """
    x = frozenset(int(v) for v in x)
    if zeta.q != lam.q:
        raise InvalidInputError(f"certificate set built for q={zeta.q}, instance has q={lam.q}")
    if len(lam) != g.n:
        raise InvalidInputError("list count does not match the graph")
    if any(not 0 <= v < g.n for v in x):
        raise InvalidInputError("modulator contains out-of-range vertices")
    if not verify_modulator(g, x, zeta.tag):
        raise InvalidInputError(f"X is not a modulator to {zeta.tag.value}")
    stats = NoCertStats()
    col = _solve(g, lam, x, zeta, 1, stats, on_skip, on_line7)
    return col is not None, col, stats


def _solve(g, lam, x, zeta, depth, stats, on_skip, on_line7):
    stats.nodes_expanded += 1
    stats.depth = max(stats.depth, depth)
    stats.modulator_sizes.append(len(x))
    conf = find_blocking_configuration(g, lam, x, zeta, stats, validate=False)
    if conf is None:
        return _decide_on_modulator(g, lam, x, stats, on_line7)
    cover = sorted(conf.cover)
    skip = conf.skipped_coloring()
    skip_tuple = tuple(skip[w] for w in cover)
    rest, index = remove_vertices(g, cover)
    sub_x = frozenset(index[v] for v in x if v in index)
    for gamma in itertools.product(*(sorted(lam[w]) for w in cover)):
        if any(g.has_edge(cover[i], cover[j]) and gamma[i] == gamma[j]
               for i in range(len(cover)) for j in range(i + 1, len(cover))):
            continue
        stats.colorings_enumerated += 1
        if gamma == skip_tuple:
            stats.skipped_colorings += 1
            if on_skip is not None:
                on_skip(g, lam, x, conf, dict(zip(cover, gamma)))
            continue
        lists = [set(l) for l in lam.lists]
        for w, c in zip(cover, gamma):
            for u in g.neighbors(w):
                lists[u].discard(c)
        sub_lam = ListAssignment(lam.q, [lists[v] for v in sorted(index)])
        sub_col = _solve(rest, sub_lam, sub_x, zeta, depth + 1, stats, on_skip, on_line7)
        if sub_col is not None:
            out = [0] * g.n
            for w, c in zip(cover, gamma):
                out[w] = c
            for v, i in index.items():
                out[v] = sub_col[i]
            return tuple(out)
    return None


def _decide_on_modulator(g, lam, x, stats, on_line7):
    stats.line7_calls += 1
    xs = sorted(x)
    gx, _ = induced_subgraph(g, xs)
    lam_x = lam.restrict(xs)
    if gx.n == 0:
        ok = True
    else:
        pg, _ = list_to_coloring(gx, lam_x)
        ok = chromatic_number_ie(pg) <= lam.q
    if on_line7 is not None:
        on_line7(g, lam, x, ok)
    if not ok:
        return None
    col_x = brute_force_list_color(gx, lam_x)
    out = [0] * g.n
    for v, c in zip(xs, col_x):
        out[v] = c
    outside = [v for v in range(g.n) if v not in x]
    if _greedy_extend(g, lam, out, outside):
        return tuple(out)
    reduced = [lam[v] - {out[w] for w in g.neighbors(v) if w in x} for v in outside]
    rest, _ = induced_subgraph(g, outside)
    col_rest = brute_force_list_color(rest, ListAssignment(lam.q, reduced))
    if col_rest is not None:
        for v, c in zip(outside, col_rest):
            out[v] = c
        return tuple(out)
    # only reachable when the certificate set misses some No-instance
    stats.line7_fallbacks += 1
    return brute_force_list_color(g, lam)


def _greedy_extend(g, lam, out, order) -> bool:
    for v in order:
        used = {out[w] for w in g.neighbors(v) if out[w]}
        free = sorted(lam[v] - used)
        if not free:
            for u in order:
                out[u] = 0
            return False
        out[v] = free[0]
    return True
