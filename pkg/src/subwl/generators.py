"""Hard-instance and random graph families."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from itertools import combinations

import numpy as np

from .errors import ValidationError
from .graph import Graph, parse_graph6


def _table(s: str) -> list[tuple[int, int]]:
    return [tuple(map(int, t.split("-"))) for t in s.split()]


# Cayley graph on Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)};
# node 4*i + j is (i, j).
SHRIKHANDE_EDGES = _table(
    "0-1 0-3 0-4 0-5 0-12 0-15 1-2 1-5 1-6 1-12 1-13 2-3 2-6 2-7 2-13 2-14 "
    "3-4 3-7 3-14 3-15 4-5 4-7 4-8 4-9 5-6 5-9 5-10 6-7 6-10 6-11 7-8 7-11 "
    "8-9 8-11 8-12 8-13 9-10 9-13 9-14 10-11 10-14 10-15 11-12 11-15 12-13 "
    "12-15 13-14 14-15"
)

# 4x4 rook's graph: same row or same column.
ROOK_EDGES = _table(
    "0-1 0-2 0-3 0-4 0-8 0-12 1-2 1-3 1-5 1-9 1-13 2-3 2-6 2-10 2-14 3-7 "
    "3-11 3-15 4-5 4-6 4-7 4-8 4-12 5-6 5-7 5-9 5-13 6-7 6-10 6-14 7-11 "
    "7-15 8-9 8-10 8-11 8-12 9-10 9-11 9-13 10-11 10-14 11-15 12-13 12-14 "
    "12-15 13-14 13-15 14-15"
)


def circulant(n: int, offsets) -> Graph:
    """Node ``i`` adjacent to ``i ± o (mod n)`` for each offset ``o``."""
    offsets = sorted(set(int(o) for o in offsets))
    for o in offsets:
        if not 1 <= o <= n // 2:
            raise ValidationError(f"offset {o} outside 1..{n // 2}")
    edges = {(min(i, (i + o) % n), max(i, (i + o) % n)) for i in range(n) for o in offsets}
    return Graph.from_edges(n, sorted(edges))


def circulant_pair() -> tuple[Graph, Graph]:
    """Two non-isomorphic 4-regular graphs on 8 nodes that 1-WL cannot separate."""
    return circulant(8, [1, 2]), circulant(8, [1, 3])


def shrikhande() -> Graph:
    return Graph.from_edges(16, SHRIKHANDE_EDGES)


def rook4() -> Graph:
    return Graph.from_edges(16, ROOK_EDGES)


def srg_pair() -> tuple[Graph, Graph]:
    """Shrikhande and 4x4 rook's graph, both SRG(16, 6, 2, 2)."""
    return shrikhande(), rook4()


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def sr25() -> list[Graph]:
    """The 15 strongly regular graphs with parameters (25, 12, 5, 6)."""
    text = resources.files("subwl").joinpath("data/sr25.g6").read_text()
    return parse_graph6(text)


# -------------------------------------------------------------------- CFI


@dataclass(frozen=True)
class CfiGadget:
    """Gadget ``X_d`` with parts ``a``, ``b`` (length d) and ``m`` (even subsets).

    Node ids: ``a[i] = i``, ``b[i] = d + i``, then one middle node per even
    subset of ``{0..d-1}`` in increasing bitmask order; ``subsets[j]`` is the
    bitmask of middle node ``m[j]``.
    """

    d: int
    graph: Graph
    a: tuple[int, ...]
    b: tuple[int, ...]
    m: tuple[int, ...]
    subsets: tuple[int, ...]

    def pair_labels(self) -> np.ndarray:
        """Labels that pin each index: ``a_i, b_i -> i`` and middle nodes -> d."""
        lab = np.full(self.graph.n, self.d, dtype=np.int64)
        lab[list(self.a)] = np.arange(self.d)
        lab[list(self.b)] = np.arange(self.d)
        return lab


def _gadget_edges(d: int):
    subsets = [s for s in range(1 << d) if bin(s).count("1") % 2 == 0]
    edges = []
    for j, s in enumerate(subsets):
        mid = 2 * d + j
        for i in range(d):
            edges.append((i if s >> i & 1 else d + i, mid))
    return subsets, edges


def cfi_gadget(d: int) -> CfiGadget:
    """``m_S`` is adjacent to ``a_i`` iff ``i in S`` and to ``b_i`` otherwise."""
    if d < 1:
        raise ValidationError("gadget degree must be >= 1")
    subsets, edges = _gadget_edges(d)
    n = 2 * d + len(subsets)
    g = Graph.from_edges(n, edges)
    return CfiGadget(d, g, tuple(range(d)), tuple(range(d, 2 * d)), tuple(range(2 * d, n)), tuple(subsets))


@dataclass(frozen=True)
class CfiPair:
    """``a`` and ``b`` differ only at base edge ``twist``; unpacks as ``(a, b)``."""

    a: Graph
    b: Graph
    twist: tuple[int, int]
    base: Graph

    def __iter__(self):
        return iter((self.a, self.b))

    def node(self, v: int, part: str, i: int) -> int:
        """Id of ``a_i``/``b_i``/``m_i`` in the gadget replacing base vertex ``v``."""
        off = {"a": 0, "b": 3, "m": 6}[part]
        return 10 * v + off + i


def _is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = np.zeros(g.n, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        u = stack.pop()
        for w in g.neighbors(u):
            if not seen[w]:
                seen[w] = True
                stack.append(int(w))
    return bool(seen.all())


def cfi_pair(base: Graph | None = None, twist: tuple[int, int] | None = None) -> CfiPair:
    """CFI graphs over a connected cubic base (default: Petersen).

    Each base vertex becomes a 10-node ``X_3``; port ``i`` of vertex ``v``
    belongs to its ``i``-th smallest neighbor. Base edge ``(u, v)`` joins
    ``a``-to-``a`` and ``b``-to-``b``, except the twisted edge in ``b`` which
    joins ``a``-to-``b`` and ``b``-to-``a``.
    """
    base = petersen() if base is None else base
    if base.n == 0 or not np.all(base.degrees == 3):
        raise ValidationError("CFI base graph must be 3-regular")
    if not _is_connected(base):
        raise ValidationError("CFI base graph must be connected")
    edges = base.edges()
    if twist is None:
        twist = (int(edges[0, 0]), int(edges[0, 1]))
    twist = (min(twist), max(twist))
    if not base.has_edge(*twist):
        raise ValidationError(f"twist {twist} is not a base edge")
    _, local = _gadget_edges(3)
    inner = [(10 * v + x, 10 * v + y) for v in range(base.n) for x, y in local]

    def port(v, u):
        return int(np.searchsorted(base.neighbors(v), u))

    plain, twisted = [], []
    for u, v in edges.tolist():
        i, j = port(u, v), port(v, u)
        au, bu, av, bv = 10 * u + i, 10 * u + 3 + i, 10 * v + j, 10 * v + 3 + j
        plain += [(au, av), (bu, bv)]
        twisted += [(au, bv), (bu, av)] if (u, v) == twist else [(au, av), (bu, bv)]
    n = 10 * base.n
    return CfiPair(Graph.from_edges(n, inner + plain), Graph.from_edges(n, inner + twisted), twist, base)


# ----------------------------------------------------------------- random


def random_graph(n: int, edge_prob: float, seed: int = 0) -> Graph:
    """Erdos-Renyi G(n, p), deterministic given ``seed``."""
    if n < 0 or not 0.0 <= edge_prob <= 1.0:
        raise ValidationError("need n >= 0 and 0 <= edge_prob <= 1")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < edge_prob
    return Graph.from_edges(n, np.column_stack([iu[keep], ju[keep]]))


def random_regular(n: int, d: int, seed: int = 0, max_tries: int = 10_000) -> Graph:
    """Uniform-ish d-regular graph by the pairing model, retried until simple."""
    if n < 0 or d < 0 or d >= max(n, 1) and not (n == 0 or d == 0):
        raise ValidationError(f"no {d}-regular graph on {n} nodes")
    if (n * d) % 2:
        raise ValidationError(f"n*d must be even, got n={n}, d={d}")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n, dtype=np.int64), d)
    for _ in range(max_tries):
        p = rng.permutation(stubs).reshape(-1, 2)
        if (p[:, 0] == p[:, 1]).any():
            continue
        key = np.minimum(p[:, 0], p[:, 1]) * n + np.maximum(p[:, 0], p[:, 1])
        if np.unique(key).size != key.size:
            continue
        return Graph.from_edges(n, p)
    raise ValidationError(f"pairing model failed to produce a simple {d}-regular graph in {max_tries} tries")


def all_pairs(graphs) -> list[tuple[int, int]]:
    return list(combinations(range(len(graphs)), 2))
