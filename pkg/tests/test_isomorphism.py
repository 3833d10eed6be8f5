import networkx as nx
import pytest
from hypothesis import given

from conftest import graph_and_perm, random_graph
from oracles import to_nx
from wlpairs.generators.families import chang_graphs, rook_graph, shrikhande_graph, triangular_graph
from wlpairs.graph import Permutation, apply_permutation, cycle_graph, disjoint_union, path_graph, star_graph
from wlpairs.isomorphism import is_isomorphic, is_rooted_isomorphic


def test_cycle_vs_two_triangles():
    assert not is_isomorphic(cycle_graph(6), disjoint_union(cycle_graph(3), cycle_graph(3)))


def test_rook_vs_shrikhande():
    # same parameters srg(16,6,2,2), different graphs
    assert not is_isomorphic(rook_graph(4), shrikhande_graph())


def test_chang_graphs_pairwise_non_isomorphic_to_t8():
    graphs = [triangular_graph(8)] + chang_graphs()
    for i in range(len(graphs)):
        for j in range(i + 1, len(graphs)):
            assert not is_isomorphic(graphs[i], graphs[j])


@given(graph_and_perm(max_n=10))
def test_relabeling_is_isomorphic(gp):
    g, p = gp
    assert is_isomorphic(g, apply_permutation(g, p))


def test_agrees_with_networkx(rng):
    for _ in range(400):
        n = int(rng.integers(1, 10))
        p = float(rng.uniform(0.1, 0.7))
        g = random_graph(n, p, rng)
        h = random_graph(n, p, rng)
        assert is_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))


def test_colors_respected():
    p = path_graph(3)
    assert is_isomorphic(p, p, [0, 1, 0], [0, 1, 0])
    assert not is_isomorphic(p, p, [1, 0, 0], [0, 1, 0])
    with pytest.raises(ValueError):
        is_isomorphic(p, p, [0, 0, 0], None)


def test_rooted():
    s = star_graph(3)
    assert is_rooted_isomorphic(s, s, 2, 3)
    assert not is_rooted_isomorphic(s, s, 1, 2)
    g = apply_permutation(s, Permutation((4, 1, 2, 3)))
    assert is_rooted_isomorphic(s, g, 1, 4)
