"""Forward-only GNN-AK / GNN-AK+ with seeded random weights.

Each outer layer runs a small GIN over every rooted subgraph (all inside
one union graph), then pools per node:

* ``ak``:  ``h_v = [centroid_v, subgraph_v] @ F``
* ``ak+``: ``h_v = [D[0], centroid_v, gated subgraph_v, gated context_v] @ F+``

where the gate of union position ``p`` is ``sigmoid(D[d2c_p] @ G + g)`` and
``D`` is the layer's distance-to-centroid embedding table. ``ak+`` also
appends a one-hot D2C code to the inner GIN input. The ``ak`` weights are
sub-blocks of the ``ak+`` ones, so one bundle serves both modes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import InternalConsistencyError, ValidationError
from .extract import UnionGraph, extract_all_egonets
from .graph import Graph
from .sampling import SamplePlan, propagate_encodings, scale_context

MODES = ("ak", "ak+")
POOLS = ("SUM", "MEAN")
SEPARATION_THRESHOLD = 1e-6


@dataclass(frozen=True)
class GinWeights:
    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: np.ndarray

    @property
    def in_dim(self) -> int:
        return self.w1.shape[0]


@dataclass(frozen=True)
class LayerWeights:
    """Weights for one outer layer.

    ``gin[0].w1`` has ``in_dim + d2c_dim`` rows; the trailing rows read the
    one-hot D2C code and are dropped in ``ak`` mode.
    """

    gin: tuple
    d2c_table: np.ndarray
    gate_w: np.ndarray
    gate_b: np.ndarray
    fuse: np.ndarray  # (4 * hidden, hidden): blocks [d2c, centroid, subgraph, context]

    @property
    def hidden(self) -> int:
        return self.fuse.shape[1]

    def fuse_ak(self) -> np.ndarray:
        h = self.hidden
        return self.fuse[h : 3 * h]


@dataclass(frozen=True)
class WeightBundle:
    layers: tuple = field(repr=False)
    in_dim: int
    hidden: int
    inner_layers: int
    d2c_max: int
    seed: int

    @property
    def outer_layers(self) -> int:
        return len(self.layers)

    @classmethod
    def random(
        cls,
        seed: int = 0,
        in_dim: int = 1,
        hidden: int = 64,
        outer_layers: int = 2,
        inner_layers: int = 2,
        d2c_max: int = 3,
    ) -> WeightBundle:
        """Gaussian weights scaled by ``1/sqrt(fan_in)``, deterministic in all arguments."""
        if min(in_dim, hidden, outer_layers, inner_layers) < 1 or d2c_max < 0:
            raise ValidationError("dimensions and layer counts must be positive")
        rng = np.random.default_rng([seed, in_dim, hidden, outer_layers, inner_layers, d2c_max])

        def lin(fan_in, fan_out):
            s = 1.0 / np.sqrt(fan_in)
            return rng.standard_normal((fan_in, fan_out)) * s, rng.standard_normal(fan_out) * s

        layers = []
        d = in_dim
        for _ in range(outer_layers):
            gin = []
            fan = d + d2c_max + 1
            for _ in range(inner_layers):
                w1, b1 = lin(fan, hidden)
                w2, b2 = lin(hidden, hidden)
                gin.append(GinWeights(w1, b1, w2, b2))
                fan = hidden
            table = rng.standard_normal((d2c_max + 1, hidden))
            gw, gb = lin(hidden, hidden)
            fuse, _ = lin(4 * hidden, hidden)
            layers.append(LayerWeights(tuple(gin), table, gw, gb, fuse))
            d = hidden
        return cls(tuple(layers), in_dim, hidden, inner_layers, d2c_max, seed)


@dataclass(frozen=True, eq=False)
class SubgraphEmbeddings:
    """``emb[p]`` is ``Emb(i | Sub[j])`` for union position ``p`` (node i of component j)."""

    union: UnionGraph
    emb: np.ndarray

    def component(self, j: int) -> np.ndarray:
        return self.emb[self.union.offsets[j] : self.union.offsets[j + 1]]


def _relu(x):
    return np.maximum(x, 0.0)


def _sigmoid(x):
    return 0.5 * (1.0 + np.tanh(0.5 * x))


def gin_layer(sub, h, w: GinWeights) -> np.ndarray:
    """``relu(MLP(h_v + sum of neighbor rows))`` with a two-layer ReLU MLP.

    ``sub`` may be a Graph, RootedSubgraph or UnionGraph. When ``h`` is
    narrower than ``w.w1`` (``ak`` mode skips the D2C inputs) only the
    leading rows of ``w1`` are used.
    """
    g = getattr(sub, "graph", sub)
    indptr, indices = g.indptr, g.indices
    n = indptr.size - 1
    h = np.asarray(h, dtype=np.float64)
    if h.ndim != 2 or h.shape[0] != n:
        raise ValidationError(f"expected {n} feature rows, got shape {h.shape}")
    if h.shape[1] > w.in_dim:
        raise ValidationError(f"feature width {h.shape[1]} exceeds layer input width {w.in_dim}")
    agg = h + kernels.csr_neighbor_sum(indptr, indices, h)
    z = _relu(agg @ w.w1[: h.shape[1]] + w.b1)
    return _relu(z @ w.w2 + w.b2)


def _d2c_onehot(d2c: np.ndarray, d2c_max: int) -> np.ndarray:
    out = np.zeros((d2c.size, d2c_max + 1))
    out[np.arange(d2c.size), np.minimum(d2c, d2c_max)] = 1.0
    return out


def encode_subgraphs(
    union: UnionGraph,
    h: np.ndarray,
    w: WeightBundle,
    inner_layers: int | None = None,
    layer: int = 0,
    d2c: bool = False,
) -> SubgraphEmbeddings:
    """Run the inner GIN on every component with shared weights.

    Input rows are gathered from ``h`` through the union's parent ids; with
    ``d2c`` the one-hot distance code is appended.
    """
    t = w.inner_layers if inner_layers is None else inner_layers
    if not 1 <= t <= w.inner_layers:
        raise ValidationError(f"inner_layers must be in 1..{w.inner_layers}")
    lw = w.layers[layer]
    x = np.asarray(h, dtype=np.float64)[union.nodes]
    d_in = lw.gin[0].in_dim - (w.d2c_max + 1)
    if x.shape[1] != d_in:
        raise ValidationError(f"layer {layer} expects {d_in} input features, got {x.shape[1]}")
    if d2c:
        x = np.hstack([x, _d2c_onehot(union.d2c, w.d2c_max)])
    g = union.as_graph()
    for gw in lw.gin[:t]:
        x = gin_layer(g, x, gw)
    return SubgraphEmbeddings(union, x)


def _pool_segments(x, offsets, pool):
    s = kernels.segment_sum(x, offsets)
    if pool == "MEAN":
        cnt = np.diff(offsets).astype(np.float64)
        s = s / np.maximum(cnt, 1.0)[:, None]
    return s


def _context(union: UnionGraph, x: np.ndarray, n: int, pool: str) -> np.ndarray:
    """Pool each node's rows across all components containing it, in component order."""
    order = np.argsort(union.nodes, kind="stable")
    counts = np.bincount(union.nodes, minlength=n)
    if (counts == 0).any():
        raise InternalConsistencyError(f"node {int(np.flatnonzero(counts == 0)[0])} appears in no subgraph")
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    return _pool_segments(x[order], offsets, pool)


def _gate(union: UnionGraph, lw: LayerWeights, d2c_max: int) -> np.ndarray:
    emb = lw.d2c_table[np.minimum(union.d2c, d2c_max)]
    return _sigmoid(emb @ lw.gate_w + lw.gate_b)


def _parts(union, emb, mode, pool, w, layer):
    """Per-component centroid/subgraph parts and per-position gated rows."""
    lw = w.layers[layer]
    x = emb.emb
    centroid = x[union.root_pos]
    if mode == "ak":
        return centroid, _pool_segments(x, union.offsets, pool), None
    gated = x * _gate(union, lw, w.d2c_max)
    return centroid, _pool_segments(gated, union.offsets, pool), gated


def _fuse(mode, lw: LayerWeights, centroid, sub, ctx):
    if mode == "ak":
        return np.hstack([centroid, sub]) @ lw.fuse_ak()
    d0 = np.broadcast_to(lw.d2c_table[0], centroid.shape)
    return np.hstack([d0, centroid, sub, ctx]) @ lw.fuse


def _check(mode, pool):
    if mode not in MODES:
        raise ValidationError(f"mode must be one of {MODES}, got {mode!r}")
    if pool not in POOLS:
        raise ValidationError(f"pool must be one of {POOLS}, got {pool!r}")


def pool_encodings(
    union: UnionGraph,
    emb: SubgraphEmbeddings,
    mode: str = "ak",
    pool: str = "SUM",
    w: WeightBundle | None = None,
    layer: int = 0,
) -> np.ndarray:
    """Combine centroid, subgraph and (``ak+``) context encodings per node.

    ``union`` must hold exactly one component per node, rooted in id order.
    """
    _check(mode, pool)
    n = union.parent.n
    if len(union) != n or not np.array_equal(union.roots, np.arange(n)):
        raise ValidationError("pool_encodings needs one subgraph per node in id order")
    centroid, sub, gated = _parts(union, emb, mode, pool, w, layer)
    ctx = None if gated is None else _context(union, gated, n, pool)
    return _fuse(mode, w.layers[layer], centroid, sub, ctx)


def node_features(g: Graph, in_dim: int) -> np.ndarray:
    """One-hot labels, or all-ones rows when unlabeled."""
    if g.labels is None:
        return np.ones((g.n, in_dim))
    if g.n and (g.labels.min() < 0 or g.labels.max() >= in_dim):
        raise ValidationError(f"labels must lie in 0..{in_dim - 1} for one-hot features")
    out = np.zeros((g.n, in_dim))
    out[np.arange(g.n), g.labels] = 1.0
    return out


def _sampled_layer(g, union, plan, h, w, layer, t, mode, pool):
    """One outer layer over the planned subset of subgraphs."""
    lw = w.layers[layer]
    emb = encode_subgraphs(union, h, w, t, layer, d2c=mode == "ak+")
    centroid, sub, gated = _parts(union, emb, mode, pool, w, layer)
    # union components are sorted by root; plan rows follow selection order
    pos = np.searchsorted(union.roots, plan.selected_roots)
    own = np.hstack([centroid, sub])[pos]
    full = propagate_encodings(plan, own)
    hd = centroid.shape[1]
    ctx = None
    if gated is not None:
        ctx = scale_context(plan, _context(union, gated, g.n, pool), pool)
    return _fuse(mode, lw, full[:, :hd], full[:, hd:], ctx)


def forward(
    g: Graph,
    w: WeightBundle,
    outer_layers: int | None = None,
    inner_layers: int | None = None,
    k: int = 1,
    mode: str = "ak",
    pool: str = "SUM",
    graph_pool: str = "SUM",
    plan: SamplePlan | None = None,
    return_nodes: bool = False,
):
    """Graph embedding after ``outer_layers`` rounds of extract, encode, pool.

    With a ``plan`` only the selected subgraphs are encoded; the rest of the
    nodes are filled by propagation and SUM contexts are rescaled. A plan
    selecting every node reproduces the full pass bit for bit.
    """
    _check(mode, pool)
    if graph_pool not in POOLS:
        raise ValidationError(f"graph_pool must be one of {POOLS}")
    L = w.outer_layers if outer_layers is None else outer_layers
    if not 1 <= L <= w.outer_layers:
        raise ValidationError(f"outer_layers must be in 1..{w.outer_layers}")
    h = node_features(g, w.in_dim)
    if plan is None:
        union = extract_all_egonets(g, k)
    else:
        union = extract_all_egonets(g, k, roots=np.sort(plan.selected_roots))
    for layer in range(L):
        if plan is None:
            emb = encode_subgraphs(union, h, w, inner_layers, layer, d2c=mode == "ak+")
            h = pool_encodings(union, emb, mode, pool, w, layer)
        else:
            h = _sampled_layer(g, union, plan, h, w, layer, inner_layers, mode, pool)
    if return_nodes:
        return h
    if g.n == 0:
        return np.zeros(w.hidden)
    out = kernels.segment_sum(h, np.array([0, g.n]))[0]
    return out / g.n if graph_pool == "MEAN" else out


def embedding_distance(x, y) -> float:
    """Max-norm difference of two embeddings."""
    return float(np.max(np.abs(np.asarray(x) - np.asarray(y)), initial=0.0))


def embed_pair(g: Graph, h: Graph, w: WeightBundle, **kw) -> tuple[np.ndarray, np.ndarray, float]:
    a = forward(g, w, **kw)
    b = forward(h, w, **kw)
    return a, b, embedding_distance(a, b)


def bundle_for(graphs, seed: int = 0, hidden: int = 64, outer_layers: int = 2, inner_layers: int = 2, k: int = 1):
    """Weight bundle whose input width fits the labels of all ``graphs``."""
    in_dim = 1
    for g in graphs:
        if g.labels is not None and g.n:
            in_dim = max(in_dim, int(g.labels.max()) + 1)
    return WeightBundle.random(seed, in_dim, hidden, outer_layers, inner_layers, d2c_max=k)
