"""SubgraphDrop: pick a few rooted subgraphs that still cover every node R times.

Nodes outside the selected root set receive encodings by averaging over
neighbors one BFS layer closer to the roots, and SUM-pooled context
encodings are rescaled by ``full_coverage / coverage`` so their scale
matches evaluation on all subgraphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InternalConsistencyError, ValidationError
from .extract import UnionGraph
from .graph import Graph

STRATEGIES = ("random", "farthest", "min_set_cover")
_ALIASES = {"mincover": "min_set_cover", "min-set-cover": "min_set_cover", "greedy": "min_set_cover"}


@dataclass(frozen=True, eq=False)
class SamplePlan:
    """Selected roots, per-node coverage and distance layers.

    ``layers[d-1]`` holds ``U_d``, the nodes at distance ``d`` from the
    selected set. ``flagged`` is set when some node lies in fewer than ``R``
    subgraphs in total, so the target was lowered to its full coverage.
    """

    graph: Graph = field(repr=False)
    selected_roots: np.ndarray
    coverage: np.ndarray = field(repr=False)
    full_coverage: np.ndarray = field(repr=False)
    layers: list = field(repr=False)
    R: int = 1
    strategy: str = "random"
    seed: int = 0
    flagged: bool = False

    @property
    def layer_of(self) -> np.ndarray:
        """Distance of every node to the selected set (0 on the set)."""
        out = np.zeros(self.graph.n, dtype=np.int64)
        for d, u in enumerate(self.layers, start=1):
            out[u] = d
        return out

    def to_dict(self) -> dict:
        return {
            "strategy": self.strategy,
            "R": self.R,
            "seed": self.seed,
            "flagged": self.flagged,
            "roots": self.selected_roots.tolist(),
            "coverage": self.coverage.tolist(),
            "full_coverage": self.full_coverage.tolist(),
            "layers": [u.tolist() for u in self.layers],
        }


def _multi_source_dist(g: Graph, sources) -> np.ndarray:
    """BFS distances to the nearest source; ``inf`` when unreachable."""
    dist = np.full(g.n, np.inf)
    frontier = np.unique(np.asarray(sources, dtype=np.int64))
    dist[frontier] = 0
    d = 0
    while frontier.size:
        d += 1
        nb = np.unique(np.concatenate([g.neighbors(u) for u in frontier]))
        nb = nb[np.isinf(dist[nb])]
        dist[nb] = d
        frontier = nb
    return dist


def _coverage(union: UnionGraph, chosen: np.ndarray, n: int) -> np.ndarray:
    sel = chosen[union.comp_of]
    return np.bincount(union.nodes[sel], minlength=n).astype(np.int64)


def sample(
    g: Graph,
    subgraphs: UnionGraph,
    R: int = 1,
    strategy: str = "random",
    seed: int = 0,
    first: int | None = None,
) -> SamplePlan:
    """Select rooted subgraphs until every node is covered ``R`` times.

    Parameters
    ----------
    strategy : {"random", "farthest", "min_set_cover"}
        ``random`` takes subgraphs in a seeded shuffled order; ``farthest``
        repeatedly takes the root farthest from those already chosen;
        ``min_set_cover`` greedily takes the subgraph covering the most nodes
        still below target. Ties go to the lowest root id.
    first : int, optional
        Starting root for ``farthest`` (default: drawn from ``seed``).
    """
    strategy = _ALIASES.get(strategy, strategy)
    if strategy not in STRATEGIES:
        raise ValidationError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    if R < 1:
        raise ValidationError("R must be >= 1")
    n = g.n
    ncomp = len(subgraphs)
    full = _coverage(subgraphs, np.ones(ncomp, dtype=bool), n)
    if (full == 0).any():
        raise ValidationError(f"node {int(np.flatnonzero(full == 0)[0])} is not in any subgraph")
    target = np.minimum(full, R)
    flagged = bool((full < R).any())
    rng = np.random.default_rng(seed)
    roots = subgraphs.roots
    by_root = np.argsort(roots, kind="stable")  # tie-break order: lowest root id

    chosen = np.zeros(ncomp, dtype=bool)
    cov = np.zeros(n, dtype=np.int64)
    order: list[int] = []

    def take(j):
        chosen[j] = True
        order.append(int(j))
        lo, hi = subgraphs.offsets[j], subgraphs.offsets[j + 1]
        cov[subgraphs.nodes[lo:hi]] += 1

    def done():
        return bool((cov >= target).all())

    if strategy == "random":
        for j in rng.permutation(ncomp):
            if done():
                break
            take(j)
    elif strategy == "farthest":
        comp_at = {int(r): j for j, r in enumerate(roots)}
        if first is None:
            j = int(rng.integers(ncomp)) if ncomp else 0
        else:
            if int(first) not in comp_at:
                raise ValidationError(f"first root {first} has no subgraph")
            j = comp_at[int(first)]
        dist = np.full(n, np.inf)
        while ncomp and not done():
            take(j)
            dist = np.minimum(dist, _multi_source_dist(g, [roots[j]]))
            cand = by_root[~chosen[by_root]]
            if cand.size == 0:
                break
            j = int(cand[np.argmax(dist[roots[cand]])])
    else:
        while not done():
            need = (cov < target)[subgraphs.nodes]
            gain = np.bincount(subgraphs.comp_of, weights=need, minlength=ncomp)
            gain[chosen] = -1
            j = int(by_root[np.argmax(gain[by_root])])
            take(j)

    selected = roots[np.array(order, dtype=np.int64)]
    dist = _multi_source_dist(g, selected) if selected.size else np.full(n, np.inf)
    if np.isinf(dist).any():
        raise InternalConsistencyError("a covered node is unreachable from the selected roots")
    dist = dist.astype(np.int64)
    layers = [np.flatnonzero(dist == d) for d in range(1, int(dist.max(initial=0)) + 1)]
    return SamplePlan(g, selected, cov, full, layers, R, strategy, seed, flagged)


def _as_rows(plan: SamplePlan, partial) -> np.ndarray:
    n = plan.graph.n
    s = plan.selected_roots
    if isinstance(partial, dict):
        missing = [int(v) for v in s if int(v) not in partial]
        if missing:
            raise ValidationError(f"no encoding for selected root {missing[0]}")
        rows = np.asarray([np.atleast_1d(partial[int(v)]) for v in s], dtype=np.float64)
    else:
        rows = np.asarray(partial, dtype=np.float64)
        if rows.ndim == 1:
            rows = rows[:, None]
        if rows.shape[0] != s.size:
            raise ValidationError(f"expected {s.size} rows (one per selected root), got {rows.shape[0]}")
    out = np.zeros((n, rows.shape[1]), dtype=np.float64)
    out[s] = rows
    return out


def propagate_encodings(plan: SamplePlan, partial) -> np.ndarray:
    """Fill encodings for ``V \\ S`` layer by layer.

    ``partial`` is either a dict ``root -> vector`` or an array with one row
    per selected root in ``plan.selected_roots`` order. Node ``u`` in
    ``U_d`` gets the mean of its neighbors in ``U_{d-1}``. Returns an
    ``(n, dim)`` array.
    """
    out = _as_rows(plan, partial)
    g = plan.graph
    layer = plan.layer_of
    for d, nodes in enumerate(plan.layers, start=1):
        for u in nodes.tolist():
            nb = g.neighbors(u)
            prev = nb[layer[nb] == d - 1]
            if prev.size == 0:
                raise InternalConsistencyError(f"node {u} in layer {d} has no neighbor in layer {d - 1}")
            out[u] = out[prev].mean(axis=0)
    return out


def scale_context(plan: SamplePlan, sums, pool: str = "SUM") -> np.ndarray:
    """Rescale per-node context encodings computed over the selected subgraphs.

    SUM multiplies row ``v`` by ``full_coverage[v] / coverage[v]``; MEAN is
    returned unchanged.
    """
    x = np.asarray(sums, dtype=np.float64)
    pool = pool.upper()
    if pool == "MEAN":
        return x
    if pool != "SUM":
        raise ValidationError(f"pool must be SUM or MEAN, got {pool!r}")
    if (plan.coverage == 0).any():
        v = int(np.flatnonzero(plan.coverage == 0)[0])
        raise DomainError(f"node {v} has coverage 0; the SUM scaling factor is undefined")
    factor = plan.full_coverage / plan.coverage
    return x * (factor[:, None] if x.ndim == 2 else factor)
