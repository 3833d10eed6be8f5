import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given

from conftest import graph_and_perm, graphs, random_graph
from oracles import to_nx
from wlpairs.generators.families import rook_graph, shrikhande_graph
from wlpairs.graph import (
    Graph,
    GraphError,
    Permutation,
    all_pairs_distances,
    apply_permutation,
    complete_graph,
    cycle_graph,
    disjoint_union,
    ego_net,
    path_graph,
    star_graph,
)


def test_graph_normalizes_edge_orientation():
    g = Graph(3, frozenset({(2, 1), (3, 2)}))
    assert g.edges == {(1, 2), (2, 3)}
    assert g.has_edge(2, 1) and g.has_edge(1, 2)


@pytest.mark.parametrize("edges", [[(1, 1)], [(0, 1)], [(1, 4)]])
def test_graph_rejects_invalid_edges(edges):
    with pytest.raises(GraphError):
        Graph.from_edges(3, edges)


def test_from_edges_rejects_duplicates():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 2), (2, 1)])


def test_permutation_must_be_bijection():
    with pytest.raises(GraphError):
        Permutation((1, 1, 2))


def test_identity_permutation_is_noop():
    g = cycle_graph(5)
    assert apply_permutation(g, Permutation.identity(5)) == g


def test_rotation_is_automorphism_of_c4():
    g = cycle_graph(4)
    assert apply_permutation(g, Permutation((2, 3, 4, 1))).edges == g.edges


def test_path_reversal_by_hand():
    # 1-2-3 with 1<->3 swapped is 3-2-1: same edge set {1,2},{2,3}
    g = path_graph(3)
    h = apply_permutation(g, Permutation((3, 2, 1)))
    assert h.edges == {(1, 2), (2, 3)}


def test_apply_permutation_size_mismatch():
    with pytest.raises(GraphError):
        apply_permutation(cycle_graph(4), Permutation.identity(5))


@given(graph_and_perm())
def test_permutation_preserves_adjacency(gp):
    g, p = gp
    h = apply_permutation(g, p)
    for u in range(1, g.n + 1):
        for v in range(1, g.n + 1):
            if u != v:
                assert g.has_edge(u, v) == h.has_edge(p(u), p(v))
    assert apply_permutation(h, p.inverse()) == g


def test_distances_complete_graph():
    dm = all_pairs_distances(complete_graph(6))
    off = ~np.eye(6, dtype=bool)
    assert (dm.dist[off] == 1).all() and dm.diameter == 1


def test_distances_path_and_rook():
    assert all_pairs_distances(path_graph(4)).diameter == 3
    assert all_pairs_distances(rook_graph(4)).diameter == 2


def test_distances_disconnected_is_infinite():
    dm = all_pairs_distances(disjoint_union(cycle_graph(3), cycle_graph(3)))
    assert not dm.connected
    assert math.isinf(dm.dist[0, 3])


def test_distances_match_networkx_on_random_graphs(rng):
    for _ in range(1000):
        n = int(rng.integers(1, 12))
        g = random_graph(n, float(rng.uniform(0.05, 0.6)), rng)
        dm = all_pairs_distances(g)
        d = dm.dist
        assert (d == d.T).all() and (np.diag(d) == 0).all()
        ref = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
        for u in range(1, n + 1):
            for v in range(1, n + 1):
                want = ref[u].get(v, math.inf)
                assert d[u - 1, v - 1] == want


@given(graphs(max_n=8))
def test_triangle_inequality(g):
    d = all_pairs_distances(g).dist
    n = g.n
    for k in range(n):
        assert (d <= d[:, [k]] + d[[k], :]).all()


def test_ego_net_radius_zero_and_star():
    s = star_graph(5)
    assert ego_net(s, 3, 0).n == 1
    e = ego_net(s, 1, 1)
    assert e.n == 6 and e.m == 5 and e.degrees()[0] == 5


def test_ego_net_root_first():
    g = path_graph(5)
    e = ego_net(g, 3, 1)
    assert e.n == 3 and e.degrees()[0] == 2


def test_ego_net_of_srg_is_whole_graph():
    g = shrikhande_graph()
    for v in range(1, g.n + 1):
        e = ego_net(g, v, 2)
        assert e.n == g.n and e.m == g.m
