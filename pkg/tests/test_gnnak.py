from __future__ import annotations

import numpy as np
import pytest

from helpers import bfs_dist, random_graph
from subwl.errors import ValidationError
from subwl.extract import extract_all_egonets
from subwl.generators import circulant
from subwl.gnnak import (
    SEPARATION_THRESHOLD,
    GinWeights,
    WeightBundle,
    bundle_for,
    embed_pair,
    encode_subgraphs,
    forward,
    gin_layer,
    node_features,
    pool_encodings,
)
from subwl.graph import Graph
from subwl.sampling import sample

TWO_TRIANGLES = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


# ------------------------------------------------------------- reference


def _relu(x):
    return np.maximum(x, 0.0)


def reference_forward(g, w, L, t, k, mode, pool):
    """Per-node loops over explicit egonets with dense adjacency."""
    hid = w.hidden
    h = node_features(g, w.in_dim)
    for layer in range(L):
        lw = w.layers[layer]
        egos = []
        for v in range(g.n):
            d = {u: dd for u, dd in bfs_dist(g, v).items() if dd <= k}
            nodes = sorted(d)
            a = np.array([[1.0 if g.has_edge(x, y) else 0.0 for y in nodes] for x in nodes])
            x = h[nodes]
            if mode == "ak+":
                onehot = np.zeros((len(nodes), w.d2c_max + 1))
                for i, u in enumerate(nodes):
                    onehot[i, min(d[u], w.d2c_max)] = 1.0
                x = np.hstack([x, onehot])
            for gw in lw.gin[:t]:
                x = _relu(_relu((x + a @ x) @ gw.w1[: x.shape[1]] + gw.b1) @ gw.w2 + gw.b2)
            raw = x
            if mode == "ak+":
                gate = 1 / (1 + np.exp(-(lw.d2c_table[[min(d[u], w.d2c_max) for u in nodes]] @ lw.gate_w + lw.gate_b)))
                x = x * gate
            egos.append((nodes, raw, x))
        red = (lambda r: r.mean(axis=0)) if pool == "MEAN" else (lambda r: r.sum(axis=0))
        new = np.zeros((g.n, hid))
        for v, (nodes, raw, x) in enumerate(egos):
            centroid = raw[nodes.index(v)]
            if mode == "ak":
                new[v] = np.concatenate([centroid, red(x)]) @ lw.fuse[hid : 3 * hid]
            else:
                ctx = red(np.array([xx[nn.index(v)] for nn, _, xx in egos if v in nn]))
                new[v] = np.concatenate([lw.d2c_table[0], centroid, red(x), ctx]) @ lw.fuse
        h = new
    return h


# ---------------------------------------------------------------- examples


def test_gin_layer_identity_weights():
    p3 = Graph.from_edges(3, [(0, 1), (1, 2)])
    eye = GinWeights(np.eye(1), np.zeros(1), np.eye(1), np.zeros(1))
    out = gin_layer(p3, np.array([[1.0], [2.0], [3.0]]), eye)
    assert out.ravel().tolist() == [3.0, 6.0, 5.0]


def test_gin_layer_relu():
    g = Graph.from_edges(2, [(0, 1)])
    neg = GinWeights(-np.eye(1), np.zeros(1), np.eye(1), np.zeros(1))
    assert np.all(gin_layer(g, np.ones((2, 1)), neg) == 0.0)


def test_hexagon_vs_triangles_separated():
    w = bundle_for([TWO_TRIANGLES])
    for mode in ("ak", "ak+"):
        _, _, dist = embed_pair(circulant(6, [1]), TWO_TRIANGLES, w, mode=mode)
        assert dist > SEPARATION_THRESHOLD


def test_ak_weights_are_subblocks():
    w = WeightBundle.random(3, 2, 8)
    lw = w.layers[0]
    assert np.array_equal(lw.fuse_ak(), lw.fuse[8:24])
    assert lw.gin[0].w1.shape == (2 + w.d2c_max + 1, 8)


# -------------------------------------------------------------- properties


@pytest.mark.parametrize("mode", ["ak", "ak+"])
@pytest.mark.parametrize("pool", ["SUM", "MEAN"])
def test_matches_reference(mode, pool):
    rng = np.random.default_rng(501)
    for _ in range(6):
        g = random_graph(rng, int(rng.integers(1, 10)), 0.35, labels=2)
        for k in (1, 2):
            w = WeightBundle.random(int(rng.integers(100)), 2, 8, 2, 2, d2c_max=k)
            got = forward(g, w, k=k, mode=mode, pool=pool, return_nodes=True)
            want = reference_forward(g, w, 2, 2, k, mode, pool)
            assert np.allclose(got, want, rtol=1e-9, atol=1e-9)


def test_fewer_layers_than_bundle():
    g = random_graph(np.random.default_rng(502), 7, 0.4)
    w = WeightBundle.random(0, 1, 8, 3, 3)
    got = forward(g, w, outer_layers=1, inner_layers=2, return_nodes=True)
    assert np.allclose(got, reference_forward(g, w, 1, 2, 1, "ak", "SUM"), rtol=1e-9, atol=1e-9)


@pytest.mark.parametrize("mode", ["ak", "ak+"])
def test_permutation_invariance(mode):
    rng = np.random.default_rng(503)
    for _ in range(10):
        g = random_graph(rng, int(rng.integers(2, 14)), 0.3, labels=3)
        w = bundle_for([g], seed=1, hidden=16)
        perm = rng.permutation(g.n)
        a = forward(g, w, mode=mode)
        b = forward(g.relabel(perm), w, mode=mode)
        assert np.max(np.abs(a - b)) <= 1e-9 * max(1.0, np.max(np.abs(a)))
        na = forward(g, w, mode=mode, return_nodes=True)
        nb = forward(g.relabel(perm), w, mode=mode, return_nodes=True)
        assert np.allclose(na, nb[perm], rtol=1e-9, atol=1e-9)


def test_weights_deterministic():
    a = WeightBundle.random(7, 2, 16, 2, 2, 3)
    b = WeightBundle.random(7, 2, 16, 2, 2, 3)
    for la, lb in zip(a.layers, b.layers):
        assert np.array_equal(la.fuse, lb.fuse) and np.array_equal(la.gin[1].w2, lb.gin[1].w2)
    c = WeightBundle.random(8, 2, 16, 2, 2, 3)
    assert not np.array_equal(a.layers[0].fuse, c.layers[0].fuse)
    # layers draw distinct weights
    assert not np.array_equal(a.layers[0].fuse, a.layers[1].fuse)


@pytest.mark.parametrize("mode", ["ak", "ak+"])
@pytest.mark.parametrize("pool", ["SUM", "MEAN"])
def test_full_plan_is_bit_identical(mode, pool):
    rng = np.random.default_rng(504)
    for _ in range(5):
        g = random_graph(rng, int(rng.integers(2, 12)), 0.4)
        w = bundle_for([g], hidden=16)
        u = extract_all_egonets(g, 1)
        plan = sample(g, u, R=g.n, strategy="random", seed=2)
        assert plan.selected_roots.size == g.n
        a = forward(g, w, mode=mode, pool=pool, return_nodes=True)
        b = forward(g, w, mode=mode, pool=pool, plan=plan, return_nodes=True)
        assert np.array_equal(a, b)


def test_sampled_forward_propagates_and_rescales():
    g = circulant(12, [1])
    w = bundle_for([g], hidden=16)
    plan = sample(g, extract_all_egonets(g, 1), R=1, strategy="min_set_cover")
    assert plan.selected_roots.size < g.n
    out = forward(g, w, outer_layers=1, mode="ak", plan=plan, return_nodes=True)
    assert np.all(np.isfinite(out))
    # on a vertex-transitive graph every node ends with the same encoding
    assert np.allclose(out, out[0], rtol=1e-12, atol=1e-12)
    # all root rows agree, so propagated means reproduce the full pass
    assert np.allclose(out, forward(g, w, outer_layers=1, mode="ak", return_nodes=True), rtol=1e-12, atol=1e-12)
    # ak+ contexts are rescaled estimates: node 1 sees one chosen egonet (at distance 1) scaled by 3
    plus = forward(g, w, mode="ak+", plan=plan, return_nodes=True)
    assert np.all(np.isfinite(plus)) and plan.full_coverage[1] / plan.coverage[1] == 3


def test_encode_and_pool_directly():
    g = random_graph(np.random.default_rng(505), 8, 0.4)
    w = bundle_for([g], hidden=8)
    u = extract_all_egonets(g, 1)
    emb = encode_subgraphs(u, node_features(g, 1), w)
    assert emb.emb.shape == (u.total_nodes, 8)
    assert emb.component(2).shape[0] == u.offsets[3] - u.offsets[2]
    h = pool_encodings(u, emb, "ak", "SUM", w)
    assert np.allclose(h, forward(g, w, outer_layers=1, return_nodes=True), rtol=0, atol=0)


def test_graph_pool_mean():
    g = circulant(5, [1])
    w = bundle_for([g], hidden=8)
    assert np.allclose(forward(g, w, graph_pool="MEAN") * 5, forward(g, w), rtol=1e-12)


def test_errors():
    g = circulant(5, [1])
    w = bundle_for([g], hidden=8)
    with pytest.raises(ValidationError):
        forward(g, w, mode="ak++")
    with pytest.raises(ValidationError):
        forward(g, w, pool="MAX")
    with pytest.raises(ValidationError):
        forward(g, w, outer_layers=3)
    with pytest.raises(ValidationError):
        forward(g.with_labels([0, 1, 2, 0, 0]), w)
    with pytest.raises(ValidationError):
        gin_layer(g, np.ones((5, 9)), w.layers[0].gin[0])
    with pytest.raises(ValidationError):
        pool_encodings(extract_all_egonets(g, 1, roots=[0]), None, w=w)
    with pytest.raises(ValidationError):
        WeightBundle.random(0, 0)
