import itertools
import random

import pytest

from modcolor.errors import InvalidInputError
from modcolor.generators import random_modulator_instance, vc_no_family
from modcolor.graph import (ClassTag, Graph, complete_graph, cycle_graph, disjoint_union,
                            path_graph, petersen_graph, star_graph)
from modcolor.oracle import coloring_violation, is_colorable
from modcolor.vc import BranchStats, is_bipartite, solve_vc


def greedy_cover(g):
    """V minus a greedy maximal independent set."""
    ind = set()
    for v in range(g.n):
        if not any(w in ind for w in g.neighbors(v)):
            ind.add(v)
    return [v for v in range(g.n) if v not in ind]


def test_examples():
    assert solve_vc(complete_graph(3), [0, 1], 3)[0]
    assert not solve_vc(complete_graph(4), [0, 1, 2], 3)[0]
    pet = petersen_graph()
    cover = greedy_cover(pet)
    assert len(cover) <= 7
    ok, col, _ = solve_vc(pet, cover, 3)
    assert ok and coloring_violation(pet, col) is None


def test_petersen_cover_of_size_six():
    pet = petersen_graph()
    covers = [c for c in itertools.combinations(range(10), 6)
              if all(u in c or v in c for u, v in pet.edges)]
    assert covers
    ok, col, _ = solve_vc(pet, covers[0], 3)
    assert ok and coloring_violation(pet, col) is None


def test_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        solve_vc(complete_graph(3), [0], 3)
    with pytest.raises(InvalidInputError):
        solve_vc(complete_graph(3), [0, 1], 0)
    with pytest.raises(InvalidInputError):
        solve_vc(complete_graph(3), [0, 5], 3)


def test_small_q():
    assert solve_vc(Graph(3), [], 1)[0]
    assert not solve_vc(path_graph(2), [0], 1)[0]
    assert solve_vc(cycle_graph(4), [0, 2], 2)[0]
    assert not solve_vc(cycle_graph(5), [0, 2, 4], 2)[0]


def test_bipartite():
    assert is_bipartite(cycle_graph(4))[0]
    assert not is_bipartite(cycle_graph(5))[0]
    forest = disjoint_union(star_graph(3), path_graph(4), Graph(2, [(0, 1)]))
    ok, col = is_bipartite(forest)
    assert ok and coloring_violation(forest, col) is None


def test_random_agreement_and_hooks():
    rng = random.Random(4)
    for _ in range(120):
        k = rng.randint(0, 8)
        g, cover = random_modulator_instance(ClassTag.INDEPENDENT, rng.randint(0, 6), k, rng,
                                             p_x=rng.random(), p_cross=rng.random())
        q = rng.randint(1, 5)
        seen = []

        def hook(h, s, ext):
            # every guess and its extension are independent sets
            assert not any(h.has_edge(a, b) for a, b in itertools.combinations(s, 2))
            assert not any(h.has_edge(a, b) for a, b in itertools.combinations(sorted(ext), 2))
            seen.append(len(s))

        ok, col, stats = solve_vc(g, cover, q, on_branch=hook)
        assert ok == is_colorable(g, q)
        if ok:
            assert coloring_violation(g, col) is None and max(col, default=1) <= q
        assert all(v >= 0 for v in stats.as_dict().values())


def test_top_level_bound():
    for k in range(6, 13):
        g, cover = vc_no_family(k, 3, seed=k)
        ok, _, stats = solve_vc(g, cover, 3)
        assert not ok
        assert stats.top_level_subsets <= 2 ** (0.9183 * k)
        assert stats.top_level_subsets == sum(_binom(k, i) for i in range(k // 3 + 1))


def _binom(n, r):
    from math import comb
    return comb(n, r)


def test_branch_stats_merge():
    a = BranchStats(1, 2, 3, 4)
    b = BranchStats(10, 20, 1, 40)
    m = a.merge(b)
    assert m.as_dict() == {"nodes_expanded": 11, "subsets_enumerated": 22, "depth": 3,
                           "top_level_subsets": 44}
