"""Independent reference implementations used only by the test suite.

Nothing here imports the library's algorithms; each function is a slow,
obviously-correct enumeration over permutations or subsets.
"""

from __future__ import annotations

from itertools import combinations, permutations

import numpy as np

from subwl.graph import Graph


def edge_set(g: Graph) -> set[frozenset]:
    return {frozenset(map(int, e)) for e in g.edges()}


def brute_isomorphic(g: Graph, h: Graph) -> bool:
    """All-permutations isomorphism check (labels must match too)."""
    if g.n != h.n or g.m != h.m:
        return False
    eg, eh = edge_set(g), edge_set(h)
    lg, lh = g.label_array(), h.label_array()
    for p in permutations(range(g.n)):
        if any(lg[v] != lh[p[v]] for v in range(g.n)):
            continue
        if all(frozenset((p[u], p[v])) in eh for u, v in map(tuple, eg)):
            return True
    return False


def brute_automorphisms(g: Graph) -> int:
    eg = edge_set(g)
    lab = g.label_array()
    count = 0
    for p in permutations(range(g.n)):
        if any(lab[v] != lab[p[v]] for v in range(g.n)):
            continue
        if all(frozenset((p[u], p[v])) in eg for u, v in map(tuple, eg)):
            count += 1
    return count


# motif patterns on vertices 0..k-1
PATTERNS = {
    "triangle": (3, [(0, 1), (1, 2), (0, 2)]),
    "star3": (4, [(0, 1), (0, 2), (0, 3)]),
    "tailed_triangle": (4, [(0, 1), (1, 2), (0, 2), (0, 3)]),
    "cycle4": (4, [(0, 1), (1, 2), (2, 3), (0, 3)]),
}


def enumerate_motif(g: Graph, motif: str) -> int:
    """Count distinct non-induced copies by mapping the pattern onto every vertex subset."""
    k, pat = PATTERNS[motif]
    adj = {v: set(map(int, g.neighbors(v))) for v in range(g.n)}
    total = 0
    for sub in combinations(range(g.n), k):
        inside = sum(1 for u, v in combinations(sub, 2) if v in adj[u])
        if inside < len(pat):
            continue
        images = set()
        for p in permutations(sub):
            if all(p[b] in adj[p[a]] for a, b in pat):
                images.add(frozenset(frozenset((p[a], p[b])) for a, b in pat))
        total += len(images)
    return total


def bfs_dist(g: Graph, src: int) -> dict[int, int]:
    dist = {src: 0}
    frontier = [src]
    while frontier:
        nxt = []
        for u in frontier:
            for w in map(int, g.neighbors(u)):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


def random_graph(rng: np.random.Generator, n: int, p: float, labels: int = 0) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    lab = None if labels == 0 else rng.integers(0, labels, n)
    return Graph.from_edges(n, edges, lab)
