"""Exact substructure counts and BFS graph properties.

Counts are non-induced: a triangle inside a K4 is counted, and so is every
4-cycle through a chord. Induced counts would differ.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, ValidationError
from .graph import Graph

MOTIFS = ("triangle", "tailed_triangle", "star3", "cycle4")


@dataclass(frozen=True)
class MotifCount:
    motif: str
    count: int


def _choose(x: np.ndarray, r: int) -> np.ndarray:
    x = x.astype(np.int64)
    if r == 2:
        return x * (x - 1) // 2
    return x * (x - 1) * (x - 2) // 6


def count_motif(g: Graph, motif: str) -> MotifCount:
    """Non-induced occurrence count of ``motif``.

    * ``triangle``: 3-cliques.
    * ``star3``: a center with an unordered triple of its neighbors.
    * ``tailed_triangle``: a triangle plus one extra edge from one of its
      vertices to a vertex outside it.
    * ``cycle4``: 4-cycles as unordered vertex cycles.
    """
    if motif not in MOTIFS:
        raise ValidationError(f"unknown motif {motif!r}; expected one of {MOTIFS}")
    deg = g.degrees
    if motif == "star3":
        c = int(_choose(deg, 3).sum())
    elif motif in ("triangle", "tailed_triangle"):
        t = kernels.triangles_per_vertex(g.indptr, g.indices)
        if motif == "triangle":
            c = int(t.sum() // 3)
        else:
            c = int((t * (deg - 2)).sum())
    else:
        # each 4-cycle has two diagonals, each counted once as a pair of common neighbors
        c = int(kernels.codegree_choose2_sum(g.indptr, g.indices) // 2)
    return MotifCount(motif, c)


def count_all(g: Graph) -> dict[str, int]:
    return {m: count_motif(g, m).count for m in MOTIFS}


@dataclass(frozen=True)
class GraphProperties:
    """BFS properties; ``diameter``/``radius`` raise DomainError when disconnected."""

    is_connected: bool
    _ecc: np.ndarray

    def _need_connected(self, what: str) -> np.ndarray:
        if not self.is_connected:
            raise DomainError(f"{what} is undefined on a disconnected graph")
        if self._ecc.size == 0:
            raise DomainError(f"{what} is undefined on the empty graph")
        return self._ecc

    @property
    def diameter(self) -> int:
        return int(self._need_connected("diameter").max())

    @property
    def radius(self) -> int:
        return int(self._need_connected("radius").min())

    def to_dict(self) -> dict:
        out = {"is_connected": self.is_connected}
        if self.is_connected and self._ecc.size:
            out.update(diameter=self.diameter, radius=self.radius)
        else:
            out.update(diameter=None, radius=None)
        return out


def eccentricities(g: Graph) -> np.ndarray:
    """Per-node eccentricity; -1 for every node when the graph is disconnected."""
    return kernels.eccentricities(g.indptr, g.indices)


def graph_properties(g: Graph) -> GraphProperties:
    ecc = eccentricities(g)
    connected = g.n == 0 or bool((ecc >= 0).all())
    return GraphProperties(connected, ecc)
