"""Seeded random instance families used by tests, fuzzing and benchmarks."""
from __future__ import annotations

import random

from .graph import ClassTag, Graph, disjoint_union
from .oracle import ListAssignment


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_graph(n: int, p: float, seed=None) -> Graph:
    rng = _rng(seed)
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_split_graph(n: int, seed=None, p: float = 0.5) -> Graph:
    rng = _rng(seed)
    if n == 0:
        return Graph(0)
    c = rng.randint(0, n)
    edges = [(u, v) for u in range(c) for v in range(u + 1, c)]
    edges += [(u, v) for v in range(c, n) for u in range(c) if rng.random() < p]
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph(n, [(perm[u], perm[v]) for u, v in edges])


def random_union_split(n: int, seed=None) -> Graph:
    rng = _rng(seed)
    parts = []
    left = n
    while left > 0:
        k = rng.randint(1, left)
        parts.append(random_split_graph(k, rng))
        left -= k
    return disjoint_union(*parts)


def random_cograph(n: int, seed=None) -> Graph:
    """Built from single vertices by random disjoint unions and joins."""
    rng = _rng(seed)
    if n <= 1:
        return Graph(n)
    k = rng.randint(1, n - 1)
    a, b = random_cograph(k, rng), random_cograph(n - k, rng)
    u = disjoint_union(a, b)
    if rng.random() < 0.5:
        return u
    return Graph(n, list(u.edges) + [(i, a.n + j) for i in range(a.n) for j in range(b.n)])


def random_linear_forest(n: int, seed=None) -> Graph:
    rng = _rng(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    edges = [(perm[i], perm[i + 1]) for i in range(n - 1) if rng.random() < 0.7]
    return Graph(n, edges)


def random_class_graph(tag: ClassTag, n: int, seed=None) -> Graph:
    rng = _rng(seed)
    tag = ClassTag(tag)
    if tag is ClassTag.INDEPENDENT:
        return Graph(n)
    if tag is ClassTag.SPLIT:
        return random_split_graph(n, rng)
    if tag is ClassTag.UNION_SPLIT:
        return random_union_split(n, rng)
    if tag is ClassTag.COGRAPH:
        return random_cograph(n, rng)
    if tag is ClassTag.LINEAR_FOREST:
        return random_linear_forest(n, rng)
    if tag is ClassTag.PATH:
        return Graph(n, [(i, i + 1) for i in range(n - 1)])
    if tag is ClassTag.FOREST:
        return Graph(n, [(v, rng.randrange(v)) for v in range(1, n) if rng.random() < 0.8])
    raise ValueError(tag)  # pragma: no cover


def random_modulator_instance(tag: ClassTag, n_rest: int, k: int, seed=None,
                              p_x: float = 0.3, p_cross: float = 0.3) -> tuple[Graph, frozenset]:
    """Graph whose first ``k`` vertices form a modulator to ``tag``.

    The remaining ``n_rest`` vertices induce a random member of the class;
    edges inside the modulator and across are independent coin flips.
    """
    rng = _rng(seed)
    rest = random_class_graph(tag, n_rest, rng)
    n = k + n_rest
    edges = [(u, v) for u in range(k) for v in range(u + 1, k) if rng.random() < p_x]
    edges += [(u, k + v) for u in range(k) for v in range(n_rest) if rng.random() < p_cross]
    edges += [(k + u, k + v) for u, v in rest.edges]
    return Graph(n, edges), frozenset(range(k))


def random_lists(n: int, q: int, seed=None, p_keep: float = 0.8) -> ListAssignment:
    """Each color kept independently with ``p_keep``."""
    rng = _rng(seed)
    return ListAssignment(q, [[c for c in range(1, q + 1) if rng.random() < p_keep]
                              for _ in range(n)])


def random_cnf(n: int, m: int, width: int, seed=None, exact: bool = True):
    """``m`` clauses over ``n`` variables, each on ``width`` distinct variables
    (or ``1..width`` if ``exact`` is false), with random signs."""
    from .reductions import CnfFormula

    rng = _rng(seed)
    clauses = []
    for _ in range(m):
        w = width if exact else rng.randint(1, width)
        vars_ = rng.sample(range(1, n + 1), min(w, n))
        clauses.append([v if rng.random() < 0.5 else -v for v in vars_])
    return CnfFormula(n, clauses)


def vc_no_family(k: int, q: int, seed=None, p_x: float = 0.15,
                 p_cross: float = 0.3) -> tuple[Graph, frozenset]:
    """Non-q-colorable graph with vertex cover ``{0..k-1}``.

    A ``K_{q+1}`` is planted on cover vertices ``0..q-1`` and one extra
    vertex outside, so every branch of the cover solver is explored.
    """
    if k < q:
        raise ValueError("need k >= q to plant the clique")
    rng = _rng(seed)
    n_out = k
    n = k + n_out
    edges = {(u, v) for u in range(q) for v in range(u + 1, q)}
    edges |= {(u, k) for u in range(q)}
    edges |= {(u, v) for u in range(k) for v in range(u + 1, k) if rng.random() < p_x}
    edges |= {(u, k + j) for u in range(k) for j in range(1, n_out) if rng.random() < p_cross}
    return Graph(n, edges), frozenset(range(k))
