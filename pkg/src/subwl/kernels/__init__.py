"""Hot numeric kernels with a numba path and a pure-numpy fallback.

The backend is chosen once at import time from ``SUBWL_BACKEND``
(``numba`` or ``numpy``). When unset, numba is used if it imports.
Both backends return bit-identical results, so fingerprints and canonical
codes do not depend on the choice.
"""

from __future__ import annotations

import importlib
import logging
import os
from types import ModuleType

logger = logging.getLogger(__name__)

BACKENDS = ("numba", "numpy")

_names = (
    "murmur3_rows",
    "wl_round",
    "bfs_balls",
    "induced_batch",
    "refine_partition",
    "csr_neighbor_sum",
    "segment_sum",
    "triangles_per_vertex",
    "codegree_choose2_sum",
    "eccentricities",
)


def load(name: str) -> ModuleType:
    """Import one backend module explicitly (used by benchmarks and tests)."""
    if name not in BACKENDS:
        raise ValueError(f"unknown kernel backend {name!r}; expected one of {BACKENDS}")
    return importlib.import_module(f"{__name__}._{name}")


def _select() -> ModuleType:
    wanted = os.environ.get("SUBWL_BACKEND", "").strip().lower()
    if wanted == "numpy":
        return load("numpy")
    try:
        return load("numba")
    except ImportError:
        if wanted == "numba":
            raise
        logger.info("numba unavailable, using numpy kernels")
        return load("numpy")


_impl = _select()
BACKEND: str = _impl.NAME

murmur3_rows = _impl.murmur3_rows
wl_round = _impl.wl_round
bfs_balls = _impl.bfs_balls
induced_batch = _impl.induced_batch
refine_partition = _impl.refine_partition
csr_neighbor_sum = _impl.csr_neighbor_sum
segment_sum = _impl.segment_sum
triangles_per_vertex = _impl.triangles_per_vertex
codegree_choose2_sum = _impl.codegree_choose2_sum
eccentricities = _impl.eccentricities

__all__ = ["BACKEND", "BACKENDS", "load", *_names]
