import itertools

import pytest

from modcolor.errors import InvalidInputError, ResourceLimitError
from modcolor.graph import (ClassTag, Graph, canonical_form, complement, complete_bipartite,
                            complete_graph, cycle_graph, disjoint_union, empty_graph,
                            enumerate_graphs_up_to, find_induced_isomorphism, graph_from_code,
                            induced_subgraph, is_induced_isomorphism, is_member, join,
                            path_graph, petersen_graph, remove_vertices, star_graph,
                            verify_modulator)


def test_graph_basics():
    g = Graph(4, [(1, 0), (2, 1), (0, 1)])
    assert g.m == 2
    assert g.neighbors(1) == {0, 2}
    assert g.has_edge(0, 1) and g.has_edge(1, 0)
    assert g.sorted_edges() == [(0, 1), (1, 2)]
    assert g.components() == [[0, 1, 2], [3]]
    assert not g.is_connected()
    assert g == Graph(4, [(0, 1), (1, 2)])
    assert hash(g) == hash(Graph(4, [(0, 1), (1, 2)]))


def test_graph_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        Graph(2, [(0, 0)])
    with pytest.raises(InvalidInputError):
        Graph(2, [(0, 2)])
    with pytest.raises(InvalidInputError):
        Graph(-1)


def test_csr_is_symmetric():
    g = petersen_graph()
    indptr, indices = g.csr()
    for v in range(g.n):
        assert set(indices[indptr[v]:indptr[v + 1]].tolist()) == set(g.neighbors(v))


def test_constructors():
    assert petersen_graph().m == 15 and all(petersen_graph().degree(v) == 3 for v in range(10))
    assert complete_bipartite(3, 3).m == 9
    assert star_graph(4).degree(0) == 4
    assert complement(complete_graph(4)).m == 0
    assert canonical_form(join(empty_graph(2), empty_graph(2))) == canonical_form(cycle_graph(4))
    u = disjoint_union(path_graph(2), path_graph(3))
    assert u.n == 5 and u.m == 3


def test_induced_subgraph_examples():
    sub, idx = induced_subgraph(complete_graph(3), [0, 1])
    assert sub.n == 2 and sub.m == 1 and idx == {0: 0, 1: 1}
    p4 = path_graph(4)
    sub, idx = induced_subgraph(p4, [0, 2, 3])
    assert sub.sorted_edges() == [(idx[2], idx[3])]
    g = petersen_graph()
    assert induced_subgraph(g, range(g.n))[0] == g
    with pytest.raises(InvalidInputError):
        induced_subgraph(g, [10])


def test_induced_subgraph_functorial():
    g = petersen_graph()
    s = [0, 2, 3, 5, 7, 8, 9]
    t = [2, 5, 8, 9]
    gs, idx = induced_subgraph(g, s)
    twice, _ = induced_subgraph(gs, [idx[v] for v in t])
    once, _ = induced_subgraph(g, t)
    assert twice == once


def test_remove_vertices():
    rest, idx = remove_vertices(cycle_graph(5), [0])
    assert rest == path_graph(4)
    assert 0 not in idx


@pytest.mark.parametrize("g,tag,want", [
    (cycle_graph(4), ClassTag.COGRAPH, True),
    (path_graph(4), ClassTag.COGRAPH, False),
    (complete_graph(3), ClassTag.SPLIT, True),
    (path_graph(5), ClassTag.PATH, True),
    (disjoint_union(path_graph(5), empty_graph(1)), ClassTag.PATH, False),
    (disjoint_union(path_graph(5), empty_graph(1)), ClassTag.LINEAR_FOREST, True),
    (empty_graph(0), ClassTag.PATH, True),
    (empty_graph(1), ClassTag.PATH, True),
    (cycle_graph(4), ClassTag.SPLIT, False),
    (disjoint_union(complete_graph(3), star_graph(2)), ClassTag.UNION_SPLIT, True),
    (disjoint_union(complete_graph(3), star_graph(2)), ClassTag.SPLIT, False),
    (star_graph(3), ClassTag.FOREST, True),
    (star_graph(3), ClassTag.LINEAR_FOREST, False),
    (empty_graph(3), ClassTag.INDEPENDENT, True),
    (path_graph(2), ClassTag.INDEPENDENT, False),
])
def test_is_member_examples(g, tag, want):
    assert is_member(g, tag) is want


def _brute_split(g):
    for bits in itertools.product((0, 1), repeat=g.n):
        k = [v for v in range(g.n) if bits[v]]
        i = [v for v in range(g.n) if not bits[v]]
        if all(g.has_edge(a, b) for a, b in itertools.combinations(k, 2)) and \
                not any(g.has_edge(a, b) for a, b in itertools.combinations(i, 2)):
            return True
    return False


def test_split_recognition_matches_definition():
    for g in enumerate_graphs_up_to(6):
        assert is_member(g, ClassTag.SPLIT) == _brute_split(g)


def test_class_hierarchy_and_heredity():
    graphs = list(enumerate_graphs_up_to(6))
    for g in graphs:
        mem = {t: is_member(g, t) for t in ClassTag}
        if mem[ClassTag.PATH]:
            assert mem[ClassTag.LINEAR_FOREST]
        if mem[ClassTag.LINEAR_FOREST]:
            assert mem[ClassTag.FOREST]
        if mem[ClassTag.SPLIT]:
            assert mem[ClassTag.UNION_SPLIT]
        if mem[ClassTag.INDEPENDENT]:
            assert all(mem[t] for t in ClassTag if t is not ClassTag.PATH)
    for g in [x for x in graphs if x.n <= 5]:
        for t in ClassTag:
            if t is ClassTag.PATH or not is_member(g, t):
                continue
            for r in range(g.n):
                for s in itertools.combinations(range(g.n), r):
                    assert is_member(induced_subgraph(g, s)[0], t)


def test_find_induced_isomorphism_examples():
    k2, k3 = complete_graph(2), complete_graph(3)
    assert find_induced_isomorphism(k2, k3) == {0: 0, 1: 1}
    assert find_induced_isomorphism(k3, cycle_graph(4)) is None
    star = star_graph(3)
    phi = find_induced_isomorphism(path_graph(3), star)
    assert 0 in phi and len(phi) == 3 and phi[0] == 1
    assert is_induced_isomorphism(path_graph(3), star, phi)


def test_find_induced_isomorphism_respects_candidates():
    g = disjoint_union(complete_graph(2), complete_graph(2))
    assert find_induced_isomorphism(complete_graph(2), g, [2, 3]) == {2: 0, 3: 1}
    assert find_induced_isomorphism(complete_graph(2), g, [0, 2]) is None


def test_find_induced_isomorphism_checked():
    graphs = list(enumerate_graphs_up_to(5))
    patterns = [h for h in enumerate_graphs_up_to(3)]
    for g in graphs[::7]:
        for h in patterns:
            phi = find_induced_isomorphism(h, g)
            if phi is not None:
                assert is_induced_isomorphism(h, g, phi)
            else:
                # confirm no subset works
                for s in itertools.combinations(range(g.n), h.n):
                    assert canonical_form(induced_subgraph(g, s)[0]) != canonical_form(h)


@pytest.mark.parametrize("g,x,tag,want", [
    (complete_graph(4), [0, 1, 2], ClassTag.INDEPENDENT, True),
    (cycle_graph(5), [], ClassTag.FOREST, False),
    (cycle_graph(5), [3], ClassTag.PATH, True),
])
def test_verify_modulator_examples(g, x, tag, want):
    assert verify_modulator(g, x, tag) is want


# unlabelled counts on 1..7 vertices from standard tables
COUNTS = {
    None: [1, 2, 4, 11, 34, 156, 1044],
    ClassTag.COGRAPH: [1, 2, 4, 10, 24, 66, 180],
    ClassTag.SPLIT: [1, 2, 4, 9, 21, 56, 164],
    ClassTag.FOREST: [1, 2, 3, 6, 10, 20, 37],
    ClassTag.LINEAR_FOREST: [1, 2, 3, 5, 7, 11, 15],
    ClassTag.PATH: [1, 1, 1, 1, 1, 1, 1],
    ClassTag.INDEPENDENT: [1, 1, 1, 1, 1, 1, 1],
}


@pytest.mark.parametrize("tag", list(COUNTS))
def test_enumeration_counts(tag, backend):
    got = [0] * 7
    for g in enumerate_graphs_up_to(7, tag):
        got[g.n - 1] += 1
    assert got == COUNTS[tag]


def test_enumeration_examples():
    assert [g.n for g in enumerate_graphs_up_to(2, ClassTag.INDEPENDENT)] == [1, 2]
    paths = list(enumerate_graphs_up_to(3, ClassTag.PATH))
    assert [(g.n, g.m) for g in paths] == [(1, 0), (2, 1), (3, 2)]
    assert sum(1 for _ in enumerate_graphs_up_to(4, ClassTag.COGRAPH)) == 17
    assert sum(1 for g in enumerate_graphs_up_to(4, ClassTag.COGRAPH) if g.n == 4) == 10
    with pytest.raises(ResourceLimitError):
        list(enumerate_graphs_up_to(8))


def test_canonical_form_invariant_under_relabelling():
    g = petersen_graph()
    sub, _ = induced_subgraph(g, range(7))
    perm = [3, 6, 0, 5, 1, 4, 2]
    relabelled = Graph(7, [(perm[u], perm[v]) for u, v in sub.edges])
    assert canonical_form(sub) == canonical_form(relabelled)
    n, code = canonical_form(sub)
    assert canonical_form(graph_from_code(n, code)) == (n, code)


def test_classtag_parse():
    assert ClassTag.parse("LinearForest") is ClassTag.LINEAR_FOREST
    assert ClassTag.parse("union-split") is ClassTag.UNION_SPLIT
    with pytest.raises(InvalidInputError):
        ClassTag.parse("chordal")
