"""1-WL color refinement and subgraph-based refinement tests.

Colors are opaque 64-bit ids. Every refinement step hashes a word sequence
``[tag, ...]`` with seeded MurmurHash3 x64/128 and keeps the low 64 bits;
distinct tags keep the different hashing contexts apart. Collisions are
possible in principle but have probability around ``2**-64`` per pair, and
all tests built on fingerprints are one-sided anyway.
"""

from __future__ import annotations

import enum
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .canon import canonical_code
from .errors import ValidationError
from .extract import UnionGraph, extract_all_egonets
from .graph import Graph

SEED = 0x5EED_C0102
TAG_INIT = 1
TAG_ROUND = 2
TAG_FINGERPRINT = 3
TAG_INNER_LABEL = 4


# ------------------------------------------------------------------ types


@dataclass(frozen=True, eq=False)
class Fingerprint:
    """Order-independent digest of a color multiset.

    ``digest`` is 16 bytes computed from the sorted colors; ``histogram`` maps
    color id to multiplicity. Equality compares digests.
    """

    digest: bytes
    histogram: dict = field(repr=False)

    @property
    def hex(self) -> str:
        return self.digest.hex()

    @property
    def n(self) -> int:
        return sum(self.histogram.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Fingerprint):
            return NotImplemented
        return self.digest == other.digest

    def __hash__(self) -> int:
        return hash(self.digest)


@dataclass(frozen=True)
class Coloring:
    colors: np.ndarray = field(repr=False)
    iteration: int
    converged: bool

    @property
    def num_classes(self) -> int:
        return int(np.unique(self.colors).size)


class Verdict(str, enum.Enum):
    NON_ISOMORPHIC = "NonIsomorphic"
    UNDECIDED = "Undecided"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Method:
    """A refinement test and its parameters.

    ``name`` is ``1wl``, ``sub1wl`` (inner 1-WL hash) or ``sub1wl-exact``
    (canonical-code hash). ``iters`` caps outer rounds (default: node count),
    ``inner_depth`` caps inner 1-WL rounds (default: run to stability).
    """

    name: str = "1wl"
    k: int = 1
    iters: int | None = None
    inner_depth: int | None = None
    root_mark: bool = True

    def __post_init__(self):
        if self.name not in METHODS:
            raise ValidationError(f"unknown method {self.name!r}; expected one of {', '.join(METHODS)}")
        if self.k < 1:
            raise ValidationError("k must be >= 1")

    @property
    def label(self) -> str:
        if self.name == "1wl":
            return "1wl"
        s = f"{self.name}(k={self.k}"
        if self.iters is not None:
            s += f",iters={self.iters}"
        if self.inner_depth is not None:
            s += f",depth={self.inner_depth}"
        if not self.root_mark:
            s += ",no-root-mark"
        return s + ")"

    @classmethod
    def parse(cls, text: str, **defaults) -> Method:
        """Parse ``"1wl"``, ``"sub1wl"``, ``"sub1wl k=2"``, ``"sub1wl-exact(k=1,iters=3)"``."""
        text = text.strip()
        m = re.fullmatch(r"([\w-]+)\s*(?:\((.*)\)|\s(.*))?", text)
        if not m:
            raise ValidationError(f"cannot parse method {text!r}")
        name = _ALIASES.get(m.group(1).lower(), m.group(1).lower())
        params = dict(defaults)
        body = m.group(2) if m.group(2) is not None else (m.group(3) or "")
        for tok in re.split(r"[,\s]+", body.strip()):
            if not tok:
                continue
            if tok in ("no-root-mark", "no_root_mark"):
                params["root_mark"] = False
                continue
            key, eq, val = tok.partition("=")
            key = key.replace("-", "_")
            if not eq or key not in ("k", "iters", "inner_depth", "depth", "t"):
                raise ValidationError(f"bad method parameter {tok!r} in {text!r}")
            key = {"depth": "inner_depth", "t": "k"}.get(key, key)
            params[key] = int(val)
        return cls(name, **params)


METHODS = ("1wl", "sub1wl", "sub1wl-exact")
_ALIASES = {"wl1": "1wl", "wl": "1wl", "subgraph_wl": "sub1wl", "sub1wl_exact": "sub1wl-exact"}


# ---------------------------------------------------------------- hashing


def _hash_cols(*cols) -> np.ndarray:
    """Row-wise hash of equal-length uint64 columns."""
    words = np.column_stack([np.asarray(c, dtype=np.uint64) for c in cols])
    h1, _ = kernels.murmur3_rows(words, np.full(words.shape[0], words.shape[1], np.int64), SEED)
    return h1


def _fingerprint(colors: np.ndarray) -> Fingerprint:
    c = np.sort(np.asarray(colors, dtype=np.uint64))
    words = np.concatenate([np.array([TAG_FINGERPRINT, c.size], dtype=np.uint64), c])[None, :]
    h1, h2 = kernels.murmur3_rows(words, np.array([words.shape[1]]), SEED)
    digest = int(h1[0]).to_bytes(8, "little") + int(h2[0]).to_bytes(8, "little")
    vals, counts = np.unique(c, return_counts=True)
    return Fingerprint(digest, dict(zip(vals.tolist(), counts.tolist())))


def _segment_digests(colors: np.ndarray, comp: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    """Low 64 bits of ``_fingerprint`` for every segment, batched."""
    ncomp = offsets.size - 1
    sizes = np.diff(offsets)
    order = np.lexsort((colors, comp))
    width = int(sizes.max(initial=0)) + 2
    words = np.zeros((ncomp, width), dtype=np.uint64)
    words[:, 0] = TAG_FINGERPRINT
    words[:, 1] = sizes.astype(np.uint64)
    pos = np.arange(comp.size) - offsets[comp[order]]
    words[comp[order], 2 + pos] = colors[order]
    h1, _ = kernels.murmur3_rows(words, sizes + 2, SEED)
    return h1


def _class_counts(colors: np.ndarray, comp: np.ndarray, ncomp: int) -> np.ndarray:
    order = np.lexsort((colors, comp))
    c, k = comp[order], colors[order]
    start = np.ones(c.size, dtype=bool)
    start[1:] = (c[1:] != c[:-1]) | (k[1:] != k[:-1])
    return np.bincount(c[start], minlength=ncomp)


def initial_colors(g: Graph) -> np.ndarray:
    return _hash_cols(np.full(g.n, TAG_INIT), g.label_array().view(np.uint64))


# ------------------------------------------------------------------- 1-WL


def refine(indptr, indices, colors, comp, ncomp, max_iters=None):
    """Run 1-WL on a disjoint union, freezing each component once stable.

    A component stops the first round its class count does not grow and
    keeps that round's colors, exactly as a standalone run would. Returns
    the colors, the number of rounds each component performed and a mask of
    components that were still changing when ``max_iters`` ran out.
    """
    colors = np.asarray(colors, dtype=np.uint64)
    counts = _class_counts(colors, comp, ncomp)
    active = np.ones(ncomp, dtype=bool)
    rounds = np.zeros(ncomp, dtype=np.int64)
    it = 0
    while active.any() and (max_iters is None or it < max_iters):
        new = kernels.wl_round(indptr, indices, colors, TAG_ROUND, SEED)
        it += 1
        live = active[comp]
        colors = np.where(live, new, colors)
        rounds[active] += 1
        nc = _class_counts(colors, comp, ncomp)
        active &= nc != counts
        counts = nc
    return colors, rounds, active


def wl1(g: Graph, max_iters: int | None = None) -> tuple[Coloring, Fingerprint]:
    """1-WL refinement until the partition stabilizes or ``max_iters`` rounds.

    Initial colors come from node labels (a shared color when unlabeled).
    """
    comp = np.zeros(g.n, dtype=np.int64)
    out, rounds, active = refine(g.indptr, g.indices, initial_colors(g), comp, 1, max_iters)
    return Coloring(out, int(rounds[0]), not active[0] or g.n == 0), _fingerprint(out)


# ---------------------------------------------------------- subgraph WL


def _inner_labels(union: UnionGraph, colors: np.ndarray, root_mark: bool) -> np.ndarray:
    is_root = np.zeros(union.total_nodes, dtype=np.uint64)
    if root_mark:
        is_root[union.root_pos] = 1
    return _hash_cols(np.full(union.total_nodes, TAG_INNER_LABEL), colors[union.nodes], is_root)


def _exact_colors(union: UnionGraph, labels: np.ndarray, cap, threads: int) -> np.ndarray:
    lab = labels.view(np.int64)

    def one(j):
        lo, hi = int(union.offsets[j]), int(union.offsets[j + 1])
        ptr = union.indptr[lo : hi + 1]
        sub = Graph(hi - lo, ptr - ptr[0], union.indices[ptr[0] : ptr[-1]] - lo, lab[lo:hi])
        return int.from_bytes(canonical_code(sub, cap).digest[:8], "little")

    idx = range(len(union))
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            vals = list(ex.map(one, idx))
    else:
        vals = [one(j) for j in idx]
    return np.array(vals, dtype=np.uint64)


def subgraph_wl_coloring(
    g: Graph,
    k: int = 1,
    iters: int | None = None,
    hash_mode: str = "wl1",
    root_mark: bool = True,
    inner_depth: int | None = None,
    cap: int | None = None,
    threads: int = 1,
) -> Coloring:
    """Outer refinement where each node is recolored by a hash of its k-egonet.

    The egonet carries current colors as node labels and, with
    ``root_mark``, a marker on the root. ``hash_mode="wl1"`` hashes the
    egonet by the fingerprint of an inner 1-WL run; ``"exact"`` uses its
    canonical code. Runs ``iters`` outer rounds (default ``g.n``) or until
    the partition stops changing.
    """
    if hash_mode not in ("wl1", "exact"):
        raise ValidationError(f"hash_mode must be 'wl1' or 'exact', got {hash_mode!r}")
    colors = initial_colors(g)
    if g.n == 0:
        return Coloring(colors, 0, True)
    union = extract_all_egonets(g, k)
    iters = g.n if iters is None else iters
    ncls = np.unique(colors).size
    it, converged = 0, False
    while it < iters:
        labels = _inner_labels(union, colors, root_mark)
        if hash_mode == "wl1":
            inner, _, _ = refine(union.indptr, union.indices, labels, union.comp_of, len(union), inner_depth)
            new = _segment_digests(inner, union.comp_of, union.offsets)
        else:
            new = _exact_colors(union, labels, cap, threads)
        it += 1
        nn = np.unique(new).size
        colors = new
        if nn == ncls:
            converged = True
            break
        ncls = nn
    return Coloring(colors, it, converged)


def subgraph_wl(g: Graph, k: int = 1, iters: int | None = None, hash_mode: str = "wl1", **kw) -> Fingerprint:
    return _fingerprint(subgraph_wl_coloring(g, k, iters, hash_mode, **kw).colors)


# ------------------------------------------------------------ distinguish


def fingerprint(g: Graph, method: Method | str, threads: int = 1) -> Fingerprint:
    if isinstance(method, str):
        method = Method.parse(method)
    if method.name == "1wl":
        return wl1(g, method.iters)[1]
    mode = "exact" if method.name == "sub1wl-exact" else "wl1"
    return subgraph_wl(
        g, method.k, method.iters, mode, root_mark=method.root_mark, inner_depth=method.inner_depth, threads=threads
    )


def compare(g: Graph, h: Graph, method: Method | str = "1wl", threads: int = 1):
    """Verdict plus both fingerprints (``None`` when sizes short-circuit)."""
    if isinstance(method, str):
        method = Method.parse(method)
    if g.n != h.n:
        return Verdict.NON_ISOMORPHIC, None, None
    if method.iters is None:
        method = Method(method.name, method.k, g.n, method.inner_depth, method.root_mark)
    fa = fingerprint(g, method, threads)
    fb = fingerprint(h, method, threads)
    return (Verdict.UNDECIDED if fa == fb else Verdict.NON_ISOMORPHIC), fa, fb


def distinguish(g: Graph, h: Graph, method: Method | str = "1wl", threads: int = 1) -> Verdict:
    """One-sided test: ``NonIsomorphic`` iff the fingerprints differ."""
    return compare(g, h, method, threads)[0]
