"""Rooted-subgraph extraction: k-egonets, random-walk subgraphs, union graphs."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .errors import ValidationError
from .graph import Graph, induced_subgraph


@dataclass(frozen=True, eq=False)
class RootedSubgraph:
    """Induced subgraph around a root.

    Attributes
    ----------
    graph : Graph
        Subgraph in local ids; labels carried over from the parent.
    root_local : int
        Local id of the root.
    parent_ids : ndarray
        ``parent_ids[i]`` is the parent id of local node ``i`` (increasing).
    d2c : ndarray
        Hop distance of each local node from the root.
    """

    graph: Graph
    root_local: int
    parent_ids: np.ndarray
    d2c: np.ndarray

    @property
    def root(self) -> int:
        return int(self.parent_ids[self.root_local])

    @property
    def n(self) -> int:
        return self.graph.n


class UnionGraph:
    """Disjoint union of rooted subgraphs, stored flat.

    Component ``j`` occupies union positions ``offsets[j]:offsets[j+1]``;
    ``nodes`` maps each position to its parent id and ``indptr``/``indices``
    form the union CSR over positions. ``relaxations`` counts neighbor scans
    performed by the extracting BFS (0 when not produced by BFS).
    """

    def __init__(self, parent: Graph, roots, offsets, nodes, d2c, indptr=None, indices=None, relaxations=0):
        self.parent = parent
        self.roots = np.asarray(roots, dtype=np.int64)
        self.offsets = np.asarray(offsets, dtype=np.int64)
        self.nodes = np.asarray(nodes, dtype=np.int64)
        self.d2c = np.asarray(d2c, dtype=np.int64)
        if indptr is None:
            indptr, indices = kernels.induced_batch(parent.indptr, parent.indices, self.offsets, self.nodes)
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.relaxations = int(relaxations)
        for a in (self.roots, self.offsets, self.nodes, self.d2c, self.indptr, self.indices):
            a.setflags(write=False)

    @classmethod
    def from_components(cls, parent: Graph, comps: list[RootedSubgraph]) -> UnionGraph:
        sizes = [c.n for c in comps]
        offsets = np.zeros(len(comps) + 1, dtype=np.int64)
        np.cumsum(sizes, out=offsets[1:])
        cat = lambda xs: np.concatenate(xs) if xs else np.zeros(0, np.int64)
        return cls(
            parent,
            [c.root for c in comps],
            offsets,
            cat([c.parent_ids for c in comps]),
            cat([c.d2c for c in comps]),
        )

    def __len__(self) -> int:
        return self.roots.size

    @property
    def total_nodes(self) -> int:
        return int(self.nodes.size)

    @property
    def total_edges(self) -> int:
        return int(self.indices.size // 2)

    @cached_property
    def comp_of(self) -> np.ndarray:
        """Component index of each union position."""
        return np.repeat(np.arange(len(self), dtype=np.int64), np.diff(self.offsets))

    @cached_property
    def root_pos(self) -> np.ndarray:
        """Union position of each component's root."""
        out = np.empty(len(self), dtype=np.int64)
        for j in range(len(self)):
            lo, hi = self.offsets[j], self.offsets[j + 1]
            out[j] = lo + np.searchsorted(self.nodes[lo:hi], self.roots[j])
        return out

    def component(self, j: int) -> RootedSubgraph:
        lo, hi = int(self.offsets[j]), int(self.offsets[j + 1])
        ptr = self.indptr[lo : hi + 1]
        sub = Graph(hi - lo, ptr - ptr[0], self.indices[ptr[0] : ptr[-1]] - lo)
        if self.parent.labels is not None:
            sub = sub.with_labels(self.parent.labels[self.nodes[lo:hi]])
        return RootedSubgraph(sub, int(self.root_pos[j] - lo), self.nodes[lo:hi], self.d2c[lo:hi])

    @property
    def components(self) -> list[RootedSubgraph]:
        return [self.component(j) for j in range(len(self))]

    def as_graph(self, labels=None) -> Graph:
        """The union itself as one (disconnected) Graph over positions."""
        return Graph(self.total_nodes, self.indptr, self.indices, labels)


def _check_node(g: Graph, v: int) -> int:
    if not 0 <= int(v) < g.n:
        raise ValidationError(f"node {v} out of range 0..{g.n - 1}")
    return int(v)


def _check_k(k: int) -> int:
    if int(k) < 1:
        raise ValidationError(f"hop radius k must be >= 1, got {k}")
    return int(k)


def extract_all_egonets(g: Graph, k: int, roots=None) -> UnionGraph:
    """k-egonets of ``roots`` (default: every node, in id order)."""
    k = _check_k(k)
    roots = np.arange(g.n, dtype=np.int64) if roots is None else np.asarray(roots, dtype=np.int64)
    for r in roots:
        _check_node(g, r)
    offsets, nodes, dists, relax = kernels.bfs_balls(g.indptr, g.indices, roots, k)
    return UnionGraph(g, roots, offsets, nodes, dists, relaxations=relax)


def extract_egonet(g: Graph, v: int, k: int) -> RootedSubgraph:
    """Induced subgraph on all nodes within ``k`` hops of ``v``."""
    v = _check_node(g, v)
    return extract_all_egonets(g, k, roots=[v]).component(0)


class WalkPolicy:
    """Second-order (node2vec) transition rule.

    From ``cur`` having arrived from ``prev``, neighbor ``x`` has unnormalized
    weight ``1/p`` if ``x == prev``, ``1`` if ``x`` is also adjacent to
    ``prev``, and ``1/q`` otherwise. The first step is uniform.
    """

    def __init__(self, p: float = 1.0, q: float = 1.0):
        if not (p > 0 and q > 0):
            raise ValidationError(f"node2vec parameters must be positive, got p={p}, q={q}")
        self.p = float(p)
        self.q = float(q)

    @property
    def uniform(self) -> bool:
        return self.p == 1.0 and self.q == 1.0

    def step_weights(self, g: Graph, prev: int | None, cur: int) -> np.ndarray:
        nb = g.neighbors(cur)
        if prev is None or self.uniform:
            return np.ones(nb.size)
        w = np.full(nb.size, 1.0 / self.q)
        pn = g.neighbors(prev)
        w[np.isin(nb, pn)] = 1.0
        w[nb == prev] = 1.0 / self.p
        return w

    def weights(self, g: Graph, prev: int | None, cur: int) -> dict[int, float]:
        """Neighbor of ``cur`` -> unnormalized weight."""
        return dict(zip(g.neighbors(cur).tolist(), self.step_weights(g, prev, cur).tolist()))


def node2vec_step_weights(p: float = 1.0, q: float = 1.0) -> WalkPolicy:
    return WalkPolicy(p, q)


def _bfs_dist(sub: Graph, root: int) -> np.ndarray:
    offsets, nodes, dists, _ = kernels.bfs_balls(sub.indptr, sub.indices, np.array([root]), sub.n)
    out = np.empty(sub.n, dtype=np.int64)
    out[nodes] = dists
    return out


def extract_rw_subgraph(
    g: Graph,
    v: int,
    walk_len: int = 10,
    repeats: int = 5,
    seed: int = 0,
    policy: WalkPolicy | None = None,
) -> RootedSubgraph:
    """Subgraph induced on the union of ``repeats`` walks of ``walk_len`` steps.

    ``d2c`` is the BFS depth from the root inside the induced subgraph,
    saturated at ``walk_len``.
    """
    v = _check_node(g, v)
    if walk_len < 1 or repeats < 1:
        raise ValidationError("walk_len and repeats must be >= 1")
    policy = policy or WalkPolicy()
    rng = np.random.default_rng(seed)
    seen = {v}
    for _ in range(repeats):
        prev, cur = None, v
        for _ in range(walk_len):
            nb = g.neighbors(cur)
            if nb.size == 0:
                break
            w = policy.step_weights(g, prev, cur)
            nxt = int(nb[rng.choice(nb.size, p=w / w.sum())])
            prev, cur = cur, nxt
            seen.add(cur)
    nodes = np.array(sorted(seen), dtype=np.int64)
    sub, ids = induced_subgraph(g, nodes)
    root = int(np.searchsorted(ids, v))
    d2c = np.minimum(_bfs_dist(sub, root), walk_len)
    return RootedSubgraph(sub, root, ids, d2c)


def extract_all_rw(g: Graph, walk_len: int = 10, repeats: int = 5, seed: int = 0, policy=None) -> UnionGraph:
    """Random-walk subgraph for every node; node ``v`` uses seed ``(seed, v)``."""
    comps = [
        extract_rw_subgraph(g, v, walk_len, repeats, seed=[seed, v], policy=policy) for v in range(g.n)
    ]
    return UnionGraph.from_components(g, comps)
