"""numba-compiled kernels; twins of ``_numpy`` with identical outputs."""

from __future__ import annotations

import numpy as np
from numba import njit

NAME = "numba"

_C1 = np.uint64(0x87C37B91114253D5)
_C2 = np.uint64(0x4CF5AD432745937F)
_F1 = np.uint64(0xFF51AFD7ED558CCD)
_F2 = np.uint64(0xC4CEB9FE1A85EC53)
_N1 = np.uint64(0x52DCE729)
_N2 = np.uint64(0x38495AB5)


@njit(cache=True, inline="always")
def _rotl(x, r):
    return (x << np.uint64(r)) | (x >> np.uint64(64 - r))


@njit(cache=True, inline="always")
def _fmix(k):
    k ^= k >> np.uint64(33)
    k *= _F1
    k ^= k >> np.uint64(33)
    k *= _F2
    k ^= k >> np.uint64(33)
    return k


@njit(cache=True)
def _murmur(buf, length, seed):
    h1 = seed
    h2 = seed
    nblocks = length // 2
    for j in range(nblocks):
        k1 = buf[2 * j]
        k2 = buf[2 * j + 1]
        k1 *= _C1
        k1 = _rotl(k1, 31)
        k1 *= _C2
        h1 ^= k1
        h1 = _rotl(h1, 27)
        h1 += h2
        h1 = h1 * np.uint64(5) + _N1
        k2 *= _C2
        k2 = _rotl(k2, 33)
        k2 *= _C1
        h2 ^= k2
        h2 = _rotl(h2, 31)
        h2 += h1
        h2 = h2 * np.uint64(5) + _N2
    if length % 2 == 1:
        k1 = buf[length - 1]
        k1 *= _C1
        k1 = _rotl(k1, 31)
        k1 *= _C2
        h1 ^= k1
    nbytes = np.uint64(length) * np.uint64(8)
    h1 ^= nbytes
    h2 ^= nbytes
    h1 += h2
    h2 += h1
    h1 = _fmix(h1)
    h2 = _fmix(h2)
    h1 += h2
    h2 += h1
    return h1, h2


@njit(cache=True)
def _murmur3_rows(words, lengths, seed):
    m = words.shape[0]
    h1 = np.empty(m, dtype=np.uint64)
    h2 = np.empty(m, dtype=np.uint64)
    for i in range(m):
        a, b = _murmur(words[i], lengths[i], seed)
        h1[i] = a
        h2[i] = b
    return h1, h2


def murmur3_rows(words, lengths, seed):
    words = np.ascontiguousarray(words, dtype=np.uint64)
    lengths = np.asarray(lengths, dtype=np.int64)
    return _murmur3_rows(words, lengths, np.uint64(seed))


@njit(cache=True)
def _wl_round(indptr, indices, colors, tag, seed):
    n = colors.size
    out = np.empty(n, dtype=np.uint64)
    maxdeg = 0
    for v in range(n):
        d = indptr[v + 1] - indptr[v]
        if d > maxdeg:
            maxdeg = d
    buf = np.empty(maxdeg + 2, dtype=np.uint64)
    for v in range(n):
        lo = indptr[v]
        d = indptr[v + 1] - lo
        buf[0] = tag
        buf[1] = colors[v]
        for j in range(d):
            buf[2 + j] = colors[indices[lo + j]]
        buf[2 : 2 + d].sort()
        h1, _ = _murmur(buf, d + 2, seed)
        out[v] = h1
    return out


def wl_round(indptr, indices, colors, tag, seed):
    colors = np.asarray(colors, dtype=np.uint64)
    return _wl_round(indptr, indices, colors, np.uint64(tag), np.uint64(seed))


@njit(cache=True)
def _bfs_balls(indptr, indices, roots, k):
    n = indptr.size - 1
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    cap = 16 * max(n, 1)
    nodes = np.empty(cap, dtype=np.int64)
    dists = np.empty(cap, dtype=np.int64)
    offsets = np.zeros(roots.size + 1, dtype=np.int64)
    relax = 0
    fill = 0
    for i in range(roots.size):
        r = roots[i]
        dist[r] = 0
        queue[0] = r
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if du >= k:
                continue
            for p in range(indptr[u], indptr[u + 1]):
                relax += 1
                w = indices[p]
                if dist[w] < 0:
                    dist[w] = du + 1
                    queue[tail] = w
                    tail += 1
        ball = np.sort(queue[:tail])
        if fill + tail > nodes.size:
            grow = max(2 * nodes.size, fill + tail)
            nn = np.empty(grow, dtype=np.int64)
            nn[:fill] = nodes[:fill]
            nodes = nn
            nd = np.empty(grow, dtype=np.int64)
            nd[:fill] = dists[:fill]
            dists = nd
        for j in range(tail):
            nodes[fill + j] = ball[j]
            dists[fill + j] = dist[ball[j]]
        fill += tail
        offsets[i + 1] = fill
        for j in range(tail):
            dist[queue[j]] = -1
    return offsets, nodes[:fill].copy(), dists[:fill].copy(), relax


def bfs_balls(indptr, indices, roots, k):
    roots = np.asarray(roots, dtype=np.int64)
    offsets, nodes, dists, relax = _bfs_balls(indptr, indices, roots, int(k))
    return offsets, nodes, dists, int(relax)


@njit(cache=True)
def _induced_batch(indptr, indices, offsets, nodes):
    n = indptr.size - 1
    total = nodes.size
    local = np.full(n, -1, dtype=np.int64)
    u_indptr = np.zeros(total + 1, dtype=np.int64)
    cap = 0
    for b in range(offsets.size - 1):
        for p in range(offsets[b], offsets[b + 1]):
            v = nodes[p]
            cap += indptr[v + 1] - indptr[v]
    u_indices = np.empty(cap, dtype=np.int64)
    fill = 0
    for b in range(offsets.size - 1):
        lo = offsets[b]
        hi = offsets[b + 1]
        for p in range(lo, hi):
            local[nodes[p]] = p
        for p in range(lo, hi):
            v = nodes[p]
            for q in range(indptr[v], indptr[v + 1]):
                w = local[indices[q]]
                if w >= 0:
                    u_indices[fill] = w
                    fill += 1
            u_indptr[p + 1] = fill
        for p in range(lo, hi):
            local[nodes[p]] = -1
    return u_indptr, u_indices[:fill].copy()


def induced_batch(indptr, indices, offsets, nodes):
    return _induced_batch(indptr, indices, np.asarray(offsets, np.int64), np.asarray(nodes, np.int64))


@njit(cache=True)
def _row_less(keys, a, b):
    for c in range(keys.shape[1]):
        if keys[a, c] != keys[b, c]:
            return keys[a, c] < keys[b, c]
    return False


@njit(cache=True)
def _dense_rank_rows(keys):
    n = keys.shape[0]
    order = np.arange(n)
    # insertion sort: n <= exact-iso cap, and partitions arrive nearly sorted
    for i in range(1, n):
        cur = order[i]
        j = i - 1
        while j >= 0 and _row_less(keys, cur, order[j]):
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = cur
    rank = np.empty(n, dtype=np.int64)
    r = 0
    rank[order[0]] = 0
    for i in range(1, n):
        if _row_less(keys, order[i - 1], order[i]):
            r += 1
        rank[order[i]] = r
    return rank, r + 1


@njit(cache=True)
def _refine_partition(adj, col):
    n = col.size
    ncells = 0
    for v in range(n):
        if col[v] + 1 > ncells:
            ncells = col[v] + 1
    while True:
        keys = np.zeros((n, ncells + 1), dtype=np.int64)
        for v in range(n):
            keys[v, 0] = col[v]
            for u in range(n):
                if adj[v, u]:
                    keys[v, 1 + col[u]] += 1
        new, nnew = _dense_rank_rows(keys)
        if nnew == ncells:
            return new
        col = new
        ncells = nnew


def refine_partition(adj, col):
    col = np.asarray(col, dtype=np.int64)
    if col.size == 0:
        return col.copy()
    return _refine_partition(np.ascontiguousarray(adj, dtype=np.uint8), col)


@njit(cache=True)
def _csr_neighbor_sum(indptr, indices, x):
    n = indptr.size - 1
    d = x.shape[1]
    out = np.zeros((n, d), dtype=np.float64)
    for v in range(n):
        for p in range(indptr[v], indptr[v + 1]):
            u = indices[p]
            for c in range(d):
                out[v, c] += x[u, c]
    return out


def csr_neighbor_sum(indptr, indices, x):
    return _csr_neighbor_sum(indptr, indices, np.ascontiguousarray(x, dtype=np.float64))


@njit(cache=True)
def _segment_sum(x, offsets):
    nseg = offsets.size - 1
    d = x.shape[1]
    out = np.zeros((nseg, d), dtype=np.float64)
    for s in range(nseg):
        for p in range(offsets[s], offsets[s + 1]):
            for c in range(d):
                out[s, c] += x[p, c]
    return out


def segment_sum(x, offsets):
    return _segment_sum(np.ascontiguousarray(x, dtype=np.float64), np.asarray(offsets, np.int64))


@njit(cache=True)
def _triangles_per_vertex(indptr, indices):
    n = indptr.size - 1
    tri = np.zeros(n, dtype=np.int64)
    mark = np.zeros(n, dtype=np.bool_)
    for u in range(n):
        for p in range(indptr[u], indptr[u + 1]):
            mark[indices[p]] = True
        for p in range(indptr[u], indptr[u + 1]):
            v = indices[p]
            if v <= u:
                continue
            for q in range(indptr[v], indptr[v + 1]):
                w = indices[q]
                if w > v and mark[w]:
                    tri[u] += 1
                    tri[v] += 1
                    tri[w] += 1
        for p in range(indptr[u], indptr[u + 1]):
            mark[indices[p]] = False
    return tri


def triangles_per_vertex(indptr, indices):
    return _triangles_per_vertex(indptr, indices)


@njit(cache=True)
def _codegree_choose2_sum(indptr, indices):
    n = indptr.size - 1
    cnt = np.zeros(n, dtype=np.int64)
    touched = np.empty(n, dtype=np.int64)
    total = 0
    for u in range(n):
        nt = 0
        for p in range(indptr[u], indptr[u + 1]):
            v = indices[p]
            for q in range(indptr[v], indptr[v + 1]):
                w = indices[q]
                if w > u:
                    if cnt[w] == 0:
                        touched[nt] = w
                        nt += 1
                    cnt[w] += 1
        # reset only what was touched so the pass stays O(sum of deg^2)
        for i in range(nt):
            c = cnt[touched[i]]
            total += c * (c - 1) // 2
            cnt[touched[i]] = 0
    return total


def codegree_choose2_sum(indptr, indices):
    return int(_codegree_choose2_sum(indptr, indices))


@njit(cache=True)
def _eccentricities(indptr, indices):
    n = indptr.size - 1
    ecc = np.zeros(n, dtype=np.int64)
    dist = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        dist[:] = -1
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            for p in range(indptr[u], indptr[u + 1]):
                w = indices[p]
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue[tail] = w
                    tail += 1
        ecc[s] = -1 if tail < n else dist[queue[tail - 1]]
    return ecc


def eccentricities(indptr, indices):
    return _eccentricities(indptr, indices)
