import itertools
import math
import random

import pytest

from modcolor.errors import InvalidInputError, ResourceLimitError
from modcolor.generators import random_graph, random_lists
from modcolor.graph import (Graph, complete_bipartite, complete_graph, empty_graph,
                            enumerate_graphs_up_to, induced_subgraph, path_graph,
                            petersen_graph, star_graph)
from modcolor.oracle import ListAssignment, chromatic_number_ie, is_list_colorable
from modcolor.treedepth import (TreedepthDecomposition, dfs_treedepth, exact_treedepth,
                                mark_no_certificate, marking_bound,
                                prune_to_q_plus_1_colorable)


def naive_treedepth(g):
    """Direct recursion over roots; independent of the subset table."""
    def td(verts):
        if not verts:
            return 0
        sub, idx = induced_subgraph(g, verts)
        back = {i: v for v, i in idx.items()}
        comps = sub.components()
        if len(comps) > 1:
            return max(td(tuple(back[i] for i in c)) for c in comps)
        return 1 + min(td(tuple(u for u in verts if u != v)) for v in verts)
    return td(tuple(range(g.n)))


def longest_path_vertices(g):
    best = 0
    for v in range(g.n):
        stack = [(v, 1 << v, 1)]
        while stack:
            u, seen, length = stack.pop()
            best = max(best, length)
            for w in g.neighbors(u):
                if not seen >> w & 1:
                    stack.append((w, seen | 1 << w, length + 1))
    return best


@pytest.mark.parametrize("g,td", [
    (Graph(1), 1), (empty_graph(5), 1), (path_graph(4), 3), (path_graph(7), 3),
    (complete_bipartite(3, 3), 4), (complete_graph(4), 4), (star_graph(4), 2),
    (petersen_graph(), 6), (empty_graph(0), 0),
])
def test_exact_examples(g, td, backend):
    got, dec = exact_treedepth(g)
    assert got == td and dec.depth == td and dec.is_valid_for(g)


def test_path_formula():
    for n in range(1, 12):
        assert exact_treedepth(path_graph(n))[0] == math.ceil(math.log2(n + 1))


def test_exact_matches_naive(backend):
    for g in list(enumerate_graphs_up_to(6))[::3]:
        assert exact_treedepth(g)[0] == naive_treedepth(g)


def test_exact_cap():
    with pytest.raises(ResourceLimitError):
        exact_treedepth(path_graph(6), cap=5)
    assert exact_treedepth(empty_graph(30), cap=5)[0] == 1


def test_dfs_examples():
    assert dfs_treedepth(path_graph(5)).depth == 5
    assert dfs_treedepth(complete_graph(4)).depth == 4
    d = dfs_treedepth(star_graph(4))
    assert d.depth == 2 and d.roots() == [0]


def test_sandwich_on_small_graphs():
    for g in enumerate_graphs_up_to(7):
        td, dec = exact_treedepth(g)
        dfs = dfs_treedepth(g)
        assert dec.is_valid_for(g) and dfs.is_valid_for(g)
        assert td <= dfs.depth <= longest_path_vertices(g)
        assert len(dfs.roots()) == len(g.components())


def test_decomposition_validation():
    with pytest.raises(InvalidInputError):
        TreedepthDecomposition((1, 0))
    with pytest.raises(InvalidInputError):
        TreedepthDecomposition((5,))
    flat = TreedepthDecomposition((None, None, None))
    assert flat.violation(path_graph(3)) is not None
    assert "3" in flat.violation(path_graph(3)) or "2" in flat.violation(path_graph(3))
    chain = TreedepthDecomposition((None, 0, 1))
    assert chain.is_valid_for(path_graph(3)) and chain.ancestors(2) == [1, 0]
    assert chain.restrict([0, 2]).parent == (None, 0)


def test_prune_examples():
    k4 = complete_graph(4)
    lam = ListAssignment.full(4, 2)
    assert prune_to_q_plus_1_colorable(k4, ListAssignment.full(4, 3)).vertices == (0, 1, 2, 3)
    sub = prune_to_q_plus_1_colorable(complete_graph(5), ListAssignment.full(5, 3))
    assert sub.vertices == (1, 2, 3, 4)
    assert not is_list_colorable(sub.graph, sub.lists)
    with pytest.raises(InvalidInputError):
        prune_to_q_plus_1_colorable(k4, ListAssignment.full(4, 4))
    sub = prune_to_q_plus_1_colorable(k4, lam)
    assert chromatic_number_ie(sub.graph) <= 3


def test_prune_random():
    rng = random.Random(1)
    done = 0
    while done < 40:
        g = random_graph(rng.randint(2, 9), 0.6, rng)
        lam = random_lists(g.n, 2, rng, p_keep=0.9)
        if is_list_colorable(g, lam):
            continue
        sub = prune_to_q_plus_1_colorable(g, lam)
        assert not is_list_colorable(sub.graph, sub.lists)
        assert chromatic_number_ie(sub.graph) <= 3
        done += 1


def test_marking_bound():
    assert [marking_bound(3, t) for t in range(5)] == [0, 1, 4, 13, 40]
    assert marking_bound(1, 4) == 4
    for q in (1, 2, 3):
        for t in range(1, 6):
            assert marking_bound(q, t) == q * marking_bound(q, t - 1) + 1


def test_mark_examples():
    lam = ListAssignment(2, [{1, 2}, set(), {1}])
    d = TreedepthDecomposition((None, None, None))
    assert mark_no_certificate(empty_graph(3), lam, d) == frozenset({1})
    for q in (2, 3, 4):
        star = star_graph(q)
        lists = ListAssignment(q, [range(1, q + 1)] + [{c} for c in range(1, q + 1)])
        m = mark_no_certificate(star, lists, dfs_treedepth(star))
        assert len(m) == q + 1 == marking_bound(q, 2)
    p3 = path_graph(3)
    lam = ListAssignment(2, [{1}, {1, 2}, {2}])
    d = dfs_treedepth(p3)
    assert d.depth == 3
    m = mark_no_certificate(p3, lam, d)
    assert len(m) <= marking_bound(2, 3)
    verts = sorted(m)
    assert not is_list_colorable(induced_subgraph(p3, verts)[0], lam.restrict(verts))


def test_mark_errors():
    p3 = path_graph(3)
    with pytest.raises(InvalidInputError):
        mark_no_certificate(p3, ListAssignment.full(3, 2), dfs_treedepth(p3))
    with pytest.raises(InvalidInputError):
        mark_no_certificate(p3, ListAssignment(2, [{1}, {1, 2}, {2}]),
                            TreedepthDecomposition((None, None, None)))


def test_star_marking_is_minimal():
    q = 3
    star = star_graph(q)
    lists = ListAssignment(q, [range(1, q + 1)] + [{c} for c in range(1, q + 1)])
    for r in range(q + 1):
        for s in itertools.combinations(range(q + 1), r):
            assert is_list_colorable(induced_subgraph(star, s)[0], lists.restrict(s))
