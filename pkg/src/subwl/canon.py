"""Exact canonical labeling and isomorphism testing.

Individualization-refinement search over ordered partitions, in the style of
nauty but small-scale: equitable refinement prunes the tree, and
automorphisms discovered at leaves prune sibling branches that lie in the
same orbit of the current stabilizer. The canonical form is the largest
leaf certificate, so it depends only on the isomorphism class.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import CapacityError
from .graph import Graph

EXACT_SIZE_CAP = 128
"""Default node limit for exact canonical labeling."""

_KEY = b"subwl-canonical-code-v1"


@dataclass(frozen=True, eq=False)
class CanonicalCode:
    """Isomorphism-class identifier.

    ``form`` is the full certificate (node count, labels in canonical order,
    packed canonical adjacency); equality uses it, so codes are exactly
    injective. ``digest`` is a 16-byte keyed BLAKE2b of the form for storage.
    """

    n: int
    form: bytes = field(repr=False)

    @property
    def digest(self) -> bytes:
        return hashlib.blake2b(self.form, digest_size=16, key=_KEY).digest()

    def __eq__(self, other) -> bool:
        if not isinstance(other, CanonicalCode):
            return NotImplemented
        return self.form == other.form

    def __hash__(self) -> int:
        return hash(self.form)


def _check_cap(g: Graph, cap: int | None) -> None:
    cap = EXACT_SIZE_CAP if cap is None else cap
    if g.n > cap:
        raise CapacityError(
            f"graph has {g.n} nodes, above the exact-isomorphism cap of {cap}; "
            "compare WL fingerprints instead or raise the cap"
        )


def _initial_partition(labels: np.ndarray) -> np.ndarray:
    _, col = np.unique(labels, return_inverse=True)
    return col.reshape(-1).astype(np.int64)


def _individualize(col: np.ndarray, v: int) -> np.ndarray:
    new = col * 2 + (col > col[v])
    new[col == col[v]] += 1
    new[v] -= 1
    _, new = np.unique(new, return_inverse=True)
    return new.reshape(-1).astype(np.int64)


class _Search:
    def __init__(self, g: Graph, count_only: bool = False):
        self.g = g
        self.adj = np.ascontiguousarray(g.adjacency())
        self.labels = g.label_array()
        self.count_only = count_only
        self.first: tuple[bytes, np.ndarray] | None = None
        self.best: tuple[bytes, np.ndarray] | None = None
        self.generators: list[np.ndarray] = []
        self.equivalent_leaves = 0
        self.nodes = 0

    def certificate(self, col: np.ndarray) -> tuple[bytes, np.ndarray]:
        inv = np.argsort(col, kind="stable")
        a = self.adj[np.ix_(inv, inv)]
        head = np.array([self.g.n], dtype="<i8").tobytes()
        form = head + self.labels[inv].astype("<i8").tobytes() + np.packbits(a).tobytes()
        return form, col

    def leaf(self, col: np.ndarray) -> None:
        cert, pos = self.certificate(col)
        if self.first is None:
            self.first = self.best = (cert, pos)
            self.equivalent_leaves = 1
            return
        for ref_cert, ref_pos in (self.first, self.best):
            if cert == ref_cert:
                # node v sits where ref's node gamma[v] sits
                inv_ref = np.argsort(ref_pos, kind="stable")
                gamma = inv_ref[pos]
                if not np.array_equal(gamma, np.arange(gamma.size)):
                    self.generators.append(gamma)
                if ref_cert is self.first[0]:
                    self.equivalent_leaves += 1
                return
        if cert > self.best[0]:
            self.best = (cert, pos)

    def orbits(self, fixed: list[int]) -> np.ndarray:
        n = self.g.n
        parent = np.arange(n)

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gamma in self.generators:
            if fixed and not all(gamma[f] == f for f in fixed):
                continue
            for v in range(n):
                a, b = find(v), find(int(gamma[v]))
                if a != b:
                    parent[max(a, b)] = min(a, b)
        return np.array([find(v) for v in range(n)])

    def run(self, col: np.ndarray, fixed: list[int]) -> None:
        self.nodes += 1
        col = kernels.refine_partition(self.adj, col)
        sizes = np.bincount(col)
        if sizes.size == col.size:
            self.leaf(col)
            return
        target = int(np.flatnonzero(sizes > 1)[0])
        cell = np.flatnonzero(col == target)
        explored: list[int] = []
        for v in cell.tolist():
            if explored and not self.count_only:
                orb = self.orbits(fixed)
                if any(orb[v] == orb[w] for w in explored):
                    continue
            explored.append(v)
            self.run(_individualize(col, v), fixed + [v])


def canonical_code(g: Graph, cap: int | None = None) -> CanonicalCode:
    """Canonical code of ``g``; equal codes iff the graphs are isomorphic.

    Node labels take part: an isomorphism must map each node to one with the
    same label.
    """
    _check_cap(g, cap)
    if g.n == 0:
        return CanonicalCode(0, np.zeros(1, "<i8").tobytes())
    s = _Search(g)
    s.run(_initial_partition(s.labels), [])
    return CanonicalCode(g.n, s.best[0])


def canonical_order(g: Graph, cap: int | None = None) -> np.ndarray:
    """``order[v]`` is v's position in the canonical relabeling."""
    _check_cap(g, cap)
    s = _Search(g)
    s.run(_initial_partition(s.labels), [])
    return s.best[1].copy()


def _quick_reject(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m:
        return True
    if not np.array_equal(np.sort(g.degrees), np.sort(h.degrees)):
        return True
    return not np.array_equal(np.sort(g.label_array()), np.sort(h.label_array()))


def are_isomorphic(g: Graph, h: Graph, cap: int | None = None) -> bool:
    """Exact isomorphism test (label-preserving when labels are present)."""
    _check_cap(g, cap)
    _check_cap(h, cap)
    if _quick_reject(g, h):
        return False
    return canonical_code(g, cap) == canonical_code(h, cap)


def count_automorphisms(g: Graph, cap: int | None = None) -> int:
    """Order of the (label-preserving) automorphism group.

    Walks the full unpruned search tree and counts leaves whose certificate
    equals the first leaf's; each such leaf is the image of the first under
    exactly one automorphism. Exponential in general, intended for small
    gadgets.
    """
    _check_cap(g, cap)
    if g.n == 0:
        return 1
    s = _Search(g, count_only=True)
    s.run(_initial_partition(s.labels), [])
    return s.equivalent_leaves
