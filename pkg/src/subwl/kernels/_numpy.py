"""Pure-numpy implementations of the hot kernels.

Every function here has a twin in ``_numba`` with the same signature and
bit-identical results; ``tests/test_kernels.py`` holds the two together.
"""

from __future__ import annotations

import numpy as np

NAME = "numpy"

_C1 = np.uint64(0x87C37B91114253D5)
_C2 = np.uint64(0x4CF5AD432745937F)
_F1 = np.uint64(0xFF51AFD7ED558CCD)
_F2 = np.uint64(0xC4CEB9FE1A85EC53)
_N1 = np.uint64(0x52DCE729)
_N2 = np.uint64(0x38495AB5)
_FIVE = np.uint64(5)
_EIGHT = np.uint64(8)


def _rotl(x, r):
    return (x << np.uint64(r)) | (x >> np.uint64(64 - r))


def _fmix(k):
    k = k ^ (k >> np.uint64(33))
    k = k * _F1
    k = k ^ (k >> np.uint64(33))
    k = k * _F2
    return k ^ (k >> np.uint64(33))


def murmur3_rows(words, lengths, seed):
    """MurmurHash3 x64-128 of each row's first ``lengths[i]`` words.

    Words are read as little-endian 8-byte chunks, so the result equals the
    reference hash of ``words[i, :lengths[i]].tobytes()``.
    """
    words = np.ascontiguousarray(words, dtype=np.uint64)
    lengths = np.asarray(lengths, dtype=np.int64)
    m = words.shape[0]
    h1 = np.full(m, np.uint64(seed), dtype=np.uint64)
    h2 = h1.copy()
    nblocks = lengths // 2
    top = int(nblocks.max()) if m else 0
    for j in range(top):
        act = np.flatnonzero(nblocks > j)
        k1 = words[act, 2 * j]
        k2 = words[act, 2 * j + 1]
        a = h1[act]
        b = h2[act]
        k1 = _rotl(k1 * _C1, 31) * _C2
        a = a ^ k1
        a = (_rotl(a, 27) + b) * _FIVE + _N1
        k2 = _rotl(k2 * _C2, 33) * _C1
        b = b ^ k2
        b = (_rotl(b, 31) + a) * _FIVE + _N2
        h1[act] = a
        h2[act] = b
    odd = np.flatnonzero(lengths % 2 == 1)
    if odd.size:
        k1 = words[odd, lengths[odd] - 1]
        k1 = _rotl(k1 * _C1, 31) * _C2
        h1[odd] = h1[odd] ^ k1
    nbytes = lengths.astype(np.uint64) * _EIGHT
    h1 = h1 ^ nbytes
    h2 = h2 ^ nbytes
    h1 = h1 + h2
    h2 = h2 + h1
    h1 = _fmix(h1)
    h2 = _fmix(h2)
    h1 = h1 + h2
    h2 = h2 + h1
    return h1, h2


def _row_ids(indptr):
    deg = np.diff(indptr)
    return np.repeat(np.arange(deg.size, dtype=np.int64), deg), deg


def wl_round(indptr, indices, colors, tag, seed):
    """One refinement round: hash (tag, own color, sorted neighbour colors)."""
    colors = np.asarray(colors, dtype=np.uint64)
    n = colors.size
    if n == 0:
        return colors.copy()
    row, deg = _row_ids(indptr)
    width = 2 + (int(deg.max()) if deg.size else 0)
    mat = np.zeros((n, width), dtype=np.uint64)
    mat[:, 0] = np.uint64(tag)
    mat[:, 1] = colors
    if indices.size:
        nb = colors[indices]
        order = np.lexsort((nb, row))
        pos = np.arange(indices.size, dtype=np.int64) - indptr[row]
        mat[row, 2 + pos] = nb[order]
    h1, _ = murmur3_rows(mat, deg + 2, seed)
    return h1


def bfs_balls(indptr, indices, roots, k):
    """Hop-bounded BFS from every root.

    Returns ``(offsets, nodes, dists, relaxations)`` where the ball of
    ``roots[i]`` is ``nodes[offsets[i]:offsets[i+1]]`` sorted by node id.
    Only nodes at depth < k are expanded; ``relaxations`` counts the
    adjacency entries scanned.
    """
    n = indptr.size - 1
    roots = np.asarray(roots, dtype=np.int64)
    out_nodes, out_dist = [], []
    offsets = np.zeros(roots.size + 1, dtype=np.int64)
    relax = 0
    for i, r in enumerate(roots):
        dist = np.full(n, -1, dtype=np.int64)
        dist[r] = 0
        frontier = np.array([r], dtype=np.int64)
        for depth in range(1, k + 1):
            if frontier.size == 0:
                break
            starts = indptr[frontier]
            counts = indptr[frontier + 1] - starts
            relax += int(counts.sum())
            idx = np.repeat(starts - np.cumsum(counts) + counts, counts) + np.arange(counts.sum())
            nbrs = np.unique(indices[idx])
            nbrs = nbrs[dist[nbrs] < 0]
            dist[nbrs] = depth
            frontier = nbrs
        ball = np.flatnonzero(dist >= 0)
        out_nodes.append(ball)
        out_dist.append(dist[ball])
        offsets[i + 1] = offsets[i] + ball.size
    nodes = np.concatenate(out_nodes) if out_nodes else np.zeros(0, np.int64)
    dists = np.concatenate(out_dist) if out_dist else np.zeros(0, np.int64)
    return offsets, nodes, dists, relax


def induced_batch(indptr, indices, offsets, nodes):
    """Induced subgraphs of many sorted node blocks, as one disjoint union.

    Block ``i`` is ``nodes[offsets[i]:offsets[i+1]]``; the union uses global
    positions into ``nodes`` as vertex ids. Returns ``(u_indptr, u_indices)``.
    """
    n = indptr.size - 1
    total = nodes.size
    deg_out = np.zeros(total, dtype=np.int64)
    chunks = []
    local = np.full(n, -1, dtype=np.int64)
    for b in range(offsets.size - 1):
        lo, hi = offsets[b], offsets[b + 1]
        block = nodes[lo:hi]
        local[block] = np.arange(lo, hi, dtype=np.int64)
        starts = indptr[block]
        counts = indptr[block + 1] - starts
        idx = np.repeat(starts - np.cumsum(counts) + counts, counts) + np.arange(counts.sum())
        nb = local[indices[idx]]
        owner = np.repeat(np.arange(lo, hi, dtype=np.int64), counts)
        keep = nb >= 0
        deg_out[lo:hi] = np.bincount(owner[keep] - lo, minlength=hi - lo)
        chunks.append(nb[keep])
        local[block] = -1
    u_indptr = np.zeros(total + 1, dtype=np.int64)
    np.cumsum(deg_out, out=u_indptr[1:])
    u_indices = np.concatenate(chunks) if chunks else np.zeros(0, np.int64)
    return u_indptr, u_indices


def refine_partition(adj, col):
    """Coarsest equitable refinement of an ordered partition.

    ``col[v]`` is the rank of v's cell. Each round re-ranks vertices by
    (cell rank, neighbour counts into every cell), lexicographically, which
    keeps the cell order isomorphism-invariant.
    """
    col = np.asarray(col, dtype=np.int64)
    n = col.size
    if n == 0:
        return col.copy()
    a = adj.astype(np.float64)
    ncells = int(col.max()) + 1
    while True:
        onehot = np.zeros((n, ncells), dtype=np.float64)
        onehot[np.arange(n), col] = 1.0
        counts = (a @ onehot).astype(np.int64)
        keys = np.column_stack([col, counts])
        # dense lexicographic rank of the rows
        order = np.lexsort(keys.T[::-1])
        srt = keys[order]
        step = np.empty(n, dtype=np.int64)
        step[0] = 0
        step[1:] = np.any(srt[1:] != srt[:-1], axis=1)
        new = np.empty(n, dtype=np.int64)
        new[order] = np.cumsum(step)
        nnew = int(new.max()) + 1
        if nnew == ncells:
            return new
        col, ncells = new, nnew


def csr_neighbor_sum(indptr, indices, x):
    """``out[v] = sum(x[u] for u in N(v))``, accumulated in CSR order."""
    x = np.asarray(x, dtype=np.float64)
    n = indptr.size - 1
    out = np.zeros((n, x.shape[1]), dtype=np.float64)
    deg = np.diff(indptr)
    if indices.size == 0:
        return out
    maxdeg = int(deg.max())
    row, _ = _row_ids(indptr)
    pos = np.arange(indices.size, dtype=np.int64) - indptr[row]
    # one sequential add per neighbour slot keeps the summation order fixed
    for p in range(maxdeg):
        sel = pos == p
        out[row[sel]] += x[indices[sel]]
    return out


def segment_sum(x, offsets):
    """Row sums of contiguous segments, left to right."""
    x = np.asarray(x, dtype=np.float64)
    nseg = offsets.size - 1
    out = np.zeros((nseg, x.shape[1]), dtype=np.float64)
    lengths = np.diff(offsets)
    if nseg == 0:
        return out
    for p in range(int(lengths.max())):
        sel = np.flatnonzero(lengths > p)
        out[sel] += x[offsets[sel] + p]
    return out


def _wedges(indptr, indices):
    """Endpoint pairs ``(u, w)``, ``u < w``, of every path ``u - v - w``, and the center ``v``."""
    row, deg = _row_ids(indptr)
    pos = np.arange(indices.size, dtype=np.int64)
    after = indptr[row + 1] - 1 - pos  # later entries in the same row
    total = int(after.sum())
    first = np.repeat(pos, after)
    start = np.repeat(np.cumsum(after) - after, after)
    second = first + 1 + (np.arange(total, dtype=np.int64) - start)
    return indices[first], indices[second], row[first]


def triangles_per_vertex(indptr, indices):
    n = indptr.size - 1
    u, w, center = _wedges(indptr, indices)
    if u.size == 0:
        return np.zeros(n, dtype=np.int64)
    # a wedge closes into a triangle when its endpoints are adjacent
    row, _ = _row_ids(indptr)
    edge_keys = row * n + indices
    closed = np.isin(u * n + w, edge_keys)
    return np.bincount(center[closed], minlength=n).astype(np.int64)


def codegree_choose2_sum(indptr, indices):
    """Sum over unordered vertex pairs of C(common neighbours, 2)."""
    n = indptr.size - 1
    u, w, _ = _wedges(indptr, indices)
    if u.size == 0:
        return 0
    _, c = np.unique(u * n + w, return_counts=True)
    return int((c * (c - 1) // 2).sum())


def eccentricities(indptr, indices):
    """Per-vertex eccentricity; -1 where some vertex is unreachable."""
    n = indptr.size - 1
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    # float32 products go through BLAS and stay exact: only > 0 matters
    a = np.zeros((n, n), dtype=np.float32)
    row, _ = _row_ids(indptr)
    a[row, indices] = 1.0
    reach = np.eye(n, dtype=bool)
    frontier = reach.copy()
    ecc = np.zeros(n, dtype=np.int64)
    depth = 0
    while frontier.any():
        depth += 1
        nxt = (frontier.astype(np.float32) @ a) > 0
        nxt &= ~reach
        grew = nxt.any(axis=1)
        ecc[grew] = depth
        reach |= nxt
        frontier = nxt
    ecc[~reach.all(axis=1)] = -1
    return ecc
