from __future__ import annotations

import networkx as nx
import numpy as np
import pytest

from helpers import bfs_dist, edge_set, enumerate_motif, random_graph
from subwl.errors import ValidationError
from subwl.extract import (
    UnionGraph,
    extract_all_egonets,
    extract_all_rw,
    extract_egonet,
    extract_rw_subgraph,
    node2vec_step_weights,
)
from subwl.generators import circulant, rook4, shrikhande
from subwl.graph import Graph

P5 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
STAR = Graph.from_edges(5, [(0, i) for i in range(1, 5)])
K4 = Graph.from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])


def test_path_egonet():
    s = extract_egonet(P5, 2, 1)
    assert s.parent_ids.tolist() == [1, 2, 3]
    assert s.root == 2 and s.root_local == 1
    assert s.d2c.tolist() == [1, 0, 1]
    assert s.graph.m == 2


def test_star_egonets():
    assert extract_egonet(STAR, 0, 1).n == 5
    leaf = extract_egonet(STAR, 3, 1)
    assert leaf.parent_ids.tolist() == [0, 3] and leaf.graph.m == 1
    full = extract_egonet(STAR, 3, 2)
    assert full.n == 5 and full.d2c.tolist() == [1, 2, 2, 0, 2]


def test_srg16_egonets_differ():
    # Shrikhande: neighbourhood is a hexagon, so each egonet is a 6-wheel
    for g, tri in ((shrikhande(), 6), (rook4(), 8)):
        for v in (0, 5, 11):
            s = extract_egonet(g, v, 1)
            assert s.n == 7 and s.graph.m == 12
            assert enumerate_motif(s.graph, "triangle") == tri


def test_union_totals():
    u = extract_all_egonets(circulant(6, [1]), 1)
    assert len(u) == 6 and u.total_nodes == 18 and u.total_edges == 12
    u = extract_all_egonets(K4, 1)
    assert u.total_nodes == 16 and u.total_edges == 24


def test_egonets_match_networkx():
    rng = np.random.default_rng(301)
    for _ in range(30):
        g = random_graph(rng, int(rng.integers(1, 20)), 0.15, labels=2)
        ref = nx.Graph()
        ref.add_nodes_from(range(g.n))
        ref.add_edges_from(map(tuple, g.edges()))
        for k in (1, 2, 3):
            u = extract_all_egonets(g, k)
            for j, s in enumerate(u.components):
                ego = nx.ego_graph(ref, j, radius=k)
                assert s.root == j
                assert s.parent_ids.tolist() == sorted(ego.nodes)
                ids = s.parent_ids
                assert {frozenset((int(ids[a]), int(ids[b]))) for a, b in map(tuple, edge_set(s.graph))} == {
                    frozenset(e) for e in ego.edges
                }
                d = bfs_dist(g, j)
                assert s.d2c.tolist() == [d[int(x)] for x in ids]
                assert s.graph.labels.tolist() == g.labels[ids].tolist()


def test_union_matches_components():
    rng = np.random.default_rng(302)
    g = random_graph(rng, 15, 0.25)
    u = extract_all_egonets(g, 2)
    v = UnionGraph.from_components(g, u.components)
    assert np.array_equal(u.indptr, v.indptr) and np.array_equal(u.indices, v.indices)
    assert np.array_equal(u.root_pos, v.root_pos)
    assert u.as_graph().n == u.total_nodes


def test_relaxation_bound():
    rng = np.random.default_rng(303)
    for _ in range(20):
        g = random_graph(rng, int(rng.integers(2, 25)), 0.2)
        for k in (1, 2, 3):
            u = extract_all_egonets(g, k)
            inner = u.d2c < k
            # each node closer than k gets its adjacency scanned once
            assert u.relaxations <= int(g.degrees[u.nodes[inner]].sum())
            assert u.relaxations <= 2 * u.total_edges


def test_subset_of_roots():
    u = extract_all_egonets(P5, 1, roots=[4, 0])
    assert u.roots.tolist() == [4, 0]
    assert u.component(0).parent_ids.tolist() == [3, 4]


def test_bad_arguments():
    with pytest.raises(ValidationError):
        extract_egonet(P5, 5, 1)
    with pytest.raises(ValidationError):
        extract_all_egonets(P5, 0)
    with pytest.raises(ValidationError):
        extract_rw_subgraph(P5, 0, walk_len=0)
    with pytest.raises(ValidationError):
        node2vec_step_weights(0, 1)


# ----------------------------------------------------------- random walks


def test_rw_on_cycle_stays_within_reach():
    c10 = circulant(10, [1])
    for seed in range(10):
        s = extract_rw_subgraph(c10, 0, walk_len=3, repeats=4, seed=seed)
        assert 0 in s.parent_ids.tolist() and s.root == 0
        assert set(s.parent_ids.tolist()) <= {0, 1, 2, 3, 7, 8, 9}
        # a walk traces a contiguous arc, so the visited set is connected
        assert s.graph.m == s.n - 1
        d = bfs_dist(s.graph, s.root_local)
        assert s.d2c.tolist() == [min(d[i], 3) for i in range(s.n)]


def test_rw_is_seeded():
    g = random_graph(np.random.default_rng(304), 20, 0.2)
    a = extract_rw_subgraph(g, 3, seed=7)
    b = extract_rw_subgraph(g, 3, seed=7)
    assert np.array_equal(a.parent_ids, b.parent_ids)
    u = extract_all_rw(g, walk_len=4, repeats=2, seed=1)
    assert len(u) == 20 and u.roots.tolist() == list(range(20))


def test_rw_isolated_root():
    g = Graph.from_edges(3, [(1, 2)])
    s = extract_rw_subgraph(g, 0)
    assert s.n == 1 and s.d2c.tolist() == [0]


def test_node2vec_weights():
    # 0-1, 1-2, 1-3, 0-2: arriving at 1 from 0, neighbour 2 is also adjacent to 0
    g = Graph.from_edges(4, [(0, 1), (1, 2), (1, 3), (0, 2)])
    w = node2vec_step_weights(p=2.0, q=0.5).weights(g, 0, 1)
    assert w == {0: 0.5, 2: 1.0, 3: 2.0}
    assert node2vec_step_weights(2.0, 0.5).weights(g, None, 1) == {0: 1.0, 2: 1.0, 3: 1.0}


def test_node2vec_bias_in_walks():
    # large q keeps walks local; small q pushes them out
    g = circulant(40, [1])
    near = extract_all_rw(g, walk_len=8, repeats=3, seed=0, policy=node2vec_step_weights(1.0, 20.0))
    far = extract_all_rw(g, walk_len=8, repeats=3, seed=0, policy=node2vec_step_weights(1.0, 0.05))
    assert far.total_nodes > near.total_nodes
