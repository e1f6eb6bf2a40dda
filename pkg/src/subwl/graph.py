"""Immutable simple undirected graphs, text formats, and induced subgraphs."""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

from .errors import GraphFormatError, ParseError, ValidationError


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class Graph:
    """Simple undirected graph on nodes ``0..n-1`` stored as sorted CSR.

    ``labels`` is an optional int64 array of categorical node labels.
    Instances are immutable; every derived graph is a new object.
    """

    __slots__ = ("n", "indptr", "indices", "labels", "_adj")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray, labels: np.ndarray | None = None):
        self.n = int(n)
        self.indptr = _frozen(np.asarray(indptr, dtype=np.int64))
        self.indices = _frozen(np.asarray(indices, dtype=np.int64))
        self.labels = None if labels is None else _frozen(np.asarray(labels, dtype=np.int64).copy())
        self._adj = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], labels: Sequence[int] | np.ndarray | None = None) -> Graph:
        """Build a graph, rejecting self-loops, duplicates and bad ids."""
        if n < 0:
            raise ValidationError(f"node count must be non-negative, got {n}")
        e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64).reshape(-1, 2)
        if e.size:
            bad = (e < 0) | (e >= n)
            if bad.any():
                u, v = e[bad.any(axis=1)][0]
                raise ValidationError(f"edge ({u}, {v}) references a node outside 0..{n - 1}")
            loops = e[:, 0] == e[:, 1]
            if loops.any():
                raise ValidationError(f"self-loop at node {e[loops][0, 0]}")
            lo = np.minimum(e[:, 0], e[:, 1])
            hi = np.maximum(e[:, 0], e[:, 1])
            key = lo * n + hi
            uniq, counts = np.unique(key, return_counts=True)
            if (counts > 1).any():
                d = uniq[counts > 1][0]
                raise ValidationError(f"duplicate edge ({d // n}, {d % n})")
        if labels is not None:
            labels = np.asarray(labels, dtype=np.int64)
            if labels.shape != (n,):
                raise ValidationError(f"expected {n} labels, got {labels.size}")
        return cls._from_pairs(n, e, labels)

    @classmethod
    def _from_pairs(cls, n, e, labels=None):
        src = np.concatenate([e[:, 0], e[:, 1]])
        dst = np.concatenate([e[:, 1], e[:, 0]])
        order = np.lexsort((dst, src))
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(n, indptr, dst[order], labels)

    @classmethod
    def from_adjacency(cls, adj, labels=None) -> Graph:
        a = np.asarray(adj)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValidationError("adjacency matrix must be square")
        if (a != a.T).any():
            raise ValidationError("adjacency matrix must be symmetric")
        if np.diag(a).any():
            raise ValidationError("adjacency matrix has self-loops")
        iu = np.argwhere(np.triu(a, 1))
        return cls.from_edges(a.shape[0], iu, labels)

    @property
    def m(self) -> int:
        return self.indices.size // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < nb.size and nb[i] == v)

    def edges(self) -> np.ndarray:
        """Edge array of shape (m, 2) with u < v, sorted."""
        row = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        keep = row < self.indices
        return np.column_stack([row[keep], self.indices[keep]])

    def adjacency(self) -> np.ndarray:
        """Dense uint8 adjacency matrix (cached, read-only)."""
        if self._adj is None:
            a = np.zeros((self.n, self.n), dtype=np.uint8)
            row = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
            a[row, self.indices] = 1
            self._adj = _frozen(a)
        return self._adj

    def label_array(self) -> np.ndarray:
        """Labels, or zeros when the graph is unlabeled."""
        if self.labels is None:
            return np.zeros(self.n, dtype=np.int64)
        return self.labels

    def with_labels(self, labels) -> Graph:
        labels = None if labels is None else np.asarray(labels, dtype=np.int64)
        if labels is not None and labels.shape != (self.n,):
            raise ValidationError(f"expected {self.n} labels, got {labels.size}")
        return Graph(self.n, self.indptr, self.indices, labels)

    def relabel(self, perm) -> Graph:
        """Graph with node ``v`` renamed to ``perm[v]``."""
        perm = np.asarray(perm, dtype=np.int64)
        if perm.shape != (self.n,) or not np.array_equal(np.sort(perm), np.arange(self.n)):
            raise ValidationError("perm must be a permutation of 0..n-1")
        labels = None
        if self.labels is not None:
            labels = np.empty(self.n, dtype=np.int64)
            labels[perm] = self.labels
        return Graph._from_pairs(self.n, perm[self.edges()], labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        if self.n != other.n or not np.array_equal(self.indices, other.indices):
            return False
        if not np.array_equal(self.indptr, other.indptr):
            return False
        if (self.labels is None) != (other.labels is None):
            return False
        return self.labels is None or np.array_equal(self.labels, other.labels)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        lab = "" if self.labels is None else ", labeled"
        return f"Graph(n={self.n}, m={self.m}{lab})"


def induced_subgraph(g: Graph, nodes) -> tuple[Graph, np.ndarray]:
    """Induced subgraph on a strictly increasing node set.

    Returns the subgraph (local ids ``0..len(nodes)-1``) and the array mapping
    local id to parent id.
    """
    s = np.asarray(nodes, dtype=np.int64).reshape(-1)
    if s.size == 0:
        raise ValidationError("node set must be nonempty")
    if (s < 0).any() or (s >= g.n).any():
        raise ValidationError(f"node id out of range 0..{g.n - 1}")
    if s.size > 1 and (np.diff(s) <= 0).any():
        raise ValidationError("node set must be strictly increasing")
    from . import kernels

    indptr, indices = kernels.induced_batch(g.indptr, g.indices, np.array([0, s.size], dtype=np.int64), s)
    labels = None if g.labels is None else g.labels[s]
    return Graph(s.size, indptr, indices, labels), s.copy()


# ---------------------------------------------------------------- edge list


def _is_header(first: tuple[int, int], n_edge_lines: int) -> bool:
    n, m = first
    return n >= 0 and m == n_edge_lines and m <= n * (n - 1) // 2 and (n > 0 or m == 0)


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list dialect.

    Lines hold ``u v`` edges; ``L u c`` assigns label ``c`` to node ``u``;
    ``#`` starts a comment. The first data line is a ``n m`` header when its
    ``m`` equals the number of edge lines that follow it (and ``m`` fits in
    ``n`` nodes); otherwise n is one more than the largest id seen.
    """
    pairs: list[tuple[int, int, int]] = []  # (u, v, lineno)
    labels: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "L":
                if len(tok) != 3:
                    raise ParseError(f"label line needs 'L u c', got {raw.strip()!r}", lineno)
                labels.append((int(tok[1]), int(tok[2]), lineno))
                continue
            if len(tok) != 2:
                raise ParseError(f"expected two integers, got {raw.strip()!r}", lineno)
            pairs.append((int(tok[0]), int(tok[1]), lineno))
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"non-integer token in {raw.strip()!r}", lineno) from None

    declared = None
    if pairs and _is_header(pairs[0][:2], len(pairs) - 1):
        declared = pairs[0][0]
        pairs = pairs[1:]
    for u, v, ln in pairs:
        if u < 0 or v < 0:
            raise ParseError(f"negative node id in edge ({u}, {v})", ln)
    for u, c, ln in labels:
        if u < 0:
            raise ParseError(f"negative node id in label line for {u}", ln)
    if declared is None:
        ids = [max(u, v) for u, v, _ in pairs] + [u for u, _, _ in labels]
        n = max(ids) + 1 if ids else 0
    else:
        n = declared
        for u, v, ln in pairs:
            if u >= n or v >= n:
                raise ParseError(f"node id {max(u, v)} exceeds declared n={n}", ln)
        for u, _, ln in labels:
            if u >= n:
                raise ParseError(f"label for node {u} exceeds declared n={n}", ln)
    seen = set()
    for u, v, ln in pairs:
        if u == v:
            raise ValidationError(f"line {ln}: self-loop at node {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValidationError(f"line {ln}: duplicate edge {key}")
        seen.add(key)
    lab = None
    if labels:
        lab = np.zeros(n, dtype=np.int64)
        for u, c, _ in labels:
            lab[u] = c
    return Graph.from_edges(n, [(u, v) for u, v, _ in pairs], lab)


def serialize_edge_list(g: Graph) -> str:
    """Inverse of :func:`parse_edge_list` (always writes the header)."""
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges().tolist()]
    if g.labels is not None:
        lines += [f"L {u} {c}" for u, c in enumerate(g.labels.tolist())]
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------- graph6


def _decode_size(data: bytes, lineno: int) -> tuple[int, int]:
    if not data:
        raise GraphFormatError("empty graph6 string", lineno)
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise GraphFormatError("truncated 36-bit size field", lineno)
        chunks, used = data[2:8], 8
    else:
        if len(data) < 4:
            raise GraphFormatError("truncated 18-bit size field", lineno)
        chunks, used = data[1:4], 4
    n = 0
    for c in chunks:
        n = (n << 6) | (c - 63)
    return n, used


def decode_graph6(line: str | bytes, lineno: int | None = None) -> Graph:
    data = line.encode("utf-8") if isinstance(line, str) else bytes(line)
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    for i, c in enumerate(data):
        if not 63 <= c <= 126:
            raise GraphFormatError(f"character {chr(c)!r} at offset {i} outside graph6 range 63..126", lineno)
    n, used = _decode_size(data, lineno)
    body = data[used:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) < need:
        raise GraphFormatError(f"truncated bit vector: need {need} chars for n={n}, got {len(body)}", lineno)
    if len(body) > need:
        raise GraphFormatError(f"trailing data: expected {need} chars for n={n}, got {len(body)}", lineno)
    if n == 0:
        return Graph.from_edges(0, [])
    vals = np.frombuffer(body, dtype=np.uint8).astype(np.uint8) - 63
    bits = np.unpackbits(vals[:, None], axis=1)[:, 2:].reshape(-1)[:nbits]
    # upper triangle, column-major: (0,1), (0,2), (1,2), (0,3), ...
    cols = np.repeat(np.arange(1, n), np.arange(1, n))
    rows = np.arange(nbits) - (cols * (cols - 1)) // 2
    on = bits.astype(bool)
    return Graph.from_edges(n, np.column_stack([rows[on], cols[on]]))


def parse_graph6(text: str) -> list[Graph]:
    """One graph per non-blank line."""
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.strip():
            out.append(decode_graph6(line, lineno))
    return out


def encode_graph6(g: Graph) -> str:
    n = g.n
    if n < 63:
        head = bytes([n + 63])
    elif n < 258048:
        head = bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    else:
        head = bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    nbits = n * (n - 1) // 2
    bits = np.zeros(((nbits + 5) // 6) * 6, dtype=np.uint8)
    e = g.edges()
    if e.size:
        bits[e[:, 1] * (e[:, 1] - 1) // 2 + e[:, 0]] = 1
    six = bits.reshape(-1, 6)
    vals = (six * (1 << np.arange(5, -1, -1))).sum(axis=1) + 63
    return (head + bytes(vals.astype(np.uint8).tolist())).decode("ascii")


def load_graphs(path: str) -> list[Graph]:
    """Read a ``.g6`` file (all lines) or an edge-list file (one graph)."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith((".g6", ".graph6")):
        return parse_graph6(text)
    return [parse_edge_list(text)]
