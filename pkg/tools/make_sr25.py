"""Regenerate ``src/subwl/data/sr25.g6``: the 15 SRG(25, 12, 5, 6) classes.

    python3 tools/make_sr25.py [--check | --write]

Starting points are the Paley graph P(25), the Latin-square graphs of all
reduced 5x5 Latin squares, and one extra seed recorded below (a class the
switchings do not reach from the algebraic seeds). The set is closed under

* complement (the parameters are self-complementary),
* Seidel switching through an added isolated vertex, then deleting a vertex
  that became isolated, and
* Godsil-McKay switching with respect to 4-vertex regular cells,

keeping one representative per canonical code. Output order is by canonical
digest so the file is reproducible.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from pathlib import Path

import numpy as np

from subwl.canon import canonical_code
from subwl.graph import Graph, decode_graph6, encode_graph6

N, K, LAM, MU = 25, 12, 5, 6
DATA = Path(__file__).resolve().parents[1] / "src" / "subwl" / "data" / "sr25.g6"

EXTRA_SEEDS = [r"X|eeSqFq\lZoxSFQfaa_}[XDQxo\MpStdkpmYqQXfD]Gw{b@^MT"]


def is_srg(a: np.ndarray) -> bool:
    if not np.all(a.sum(1) == K):
        return False
    a2 = a @ a
    off = ~np.eye(len(a), dtype=bool)
    return bool(np.all(a2[(a == 1) & off] == LAM) and np.all(a2[(a == 0) & off] == MU))


def paley25() -> np.ndarray:
    # GF(25) as GF(5)[x] / (x^2 - 2)
    els = [(a, b) for a in range(5) for b in range(5)]

    def mul(p, q):
        return ((p[0] * q[0] + 2 * p[1] * q[1]) % 5, (p[0] * q[1] + p[1] * q[0]) % 5)

    squares = {mul(e, e) for e in els if e != (0, 0)}
    a = np.zeros((N, N), dtype=np.int64)
    for i, p in enumerate(els):
        for j, q in enumerate(els):
            if i != j and ((p[0] - q[0]) % 5, (p[1] - q[1]) % 5) in squares:
                a[i, j] = 1
    return a


def latin_squares():
    """Reduced 5x5 Latin squares (first row and column in order)."""
    out = []

    def rec(rows):
        if len(rows) == 5:
            out.append([r[:] for r in rows])
            return
        r = len(rows)
        for perm in itertools.permutations(range(5)):
            if perm[0] == r and all(perm[c] != rows[i][c] for i in range(r) for c in range(5)):
                rows.append(list(perm))
                rec(rows)
                rows.pop()

    rec([list(range(5))])
    return out


def latin_square_graph(sq) -> np.ndarray:
    a = np.zeros((N, N), dtype=np.int64)
    for i, j in itertools.permutations(range(N), 2):
        (r1, c1), (r2, c2) = divmod(i, 5), divmod(j, 5)
        if r1 == r2 or c1 == c2 or sq[r1][c1] == sq[r2][c2]:
            a[i, j] = 1
    return a


def complement(a: np.ndarray) -> np.ndarray:
    return 1 - a - np.eye(len(a), dtype=np.int64)


def seidel_descendants(a: np.ndarray):
    n = len(a)
    b = np.zeros((n + 1, n + 1), dtype=np.int64)
    b[:n, :n] = a
    for w in range(n + 1):
        nb = b[w].astype(bool)
        out = ~nb
        out[w] = True
        s = b.copy()
        flip = np.outer(nb, out) | np.outer(out, nb)
        np.fill_diagonal(flip, False)
        s[flip] = 1 - s[flip]
        keep = [i for i in range(n + 1) if i != w]
        yield s[np.ix_(keep, keep)]


def gm_switches(a: np.ndarray):
    n = len(a)
    for cell in itertools.combinations(range(n), 4):
        cell = list(cell)
        if len(set(a[np.ix_(cell, cell)].sum(1))) != 1:
            continue
        cnt = a[:, cell].sum(1)
        outside = np.setdiff1d(np.arange(n), cell)
        if not np.all(np.isin(cnt[outside], (0, 2, 4))):
            continue
        half = outside[cnt[outside] == 2]
        if half.size == 0:
            continue
        s = a.copy()
        s[np.ix_(half, cell)] = 1 - s[np.ix_(half, cell)]
        s[np.ix_(cell, half)] = 1 - s[np.ix_(cell, half)]
        yield s


def to_graph(a: np.ndarray) -> Graph:
    return Graph.from_adjacency(a)


def closure() -> list[Graph]:
    seeds = [paley25()] + [latin_square_graph(s) for s in latin_squares()]
    seeds += [decode_graph6(s).adjacency().astype(np.int64) for s in EXTRA_SEEDS]
    found: dict = {}
    queue = []

    def add(a):
        if not is_srg(a):
            return
        g = to_graph(a)
        code = canonical_code(g)
        if code not in found:
            found[code] = g
            queue.append(a)

    for a in seeds:
        add(a)
    while queue:
        a = queue.pop()
        for b in itertools.chain([complement(a)], seidel_descendants(a), gm_switches(a)):
            add(b)
    return [found[c] for c in sorted(found, key=lambda c: c.digest)]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    mode = ap.add_mutually_exclusive_group()
    mode.add_argument("--check", action="store_true", help="compare with the shipped file (default)")
    mode.add_argument("--write", action="store_true", help="overwrite the shipped file")
    args = ap.parse_args(argv)

    graphs = closure()
    print(f"{len(graphs)} isomorphism classes of SRG({N},{K},{LAM},{MU})")
    if args.write:
        DATA.write_text("".join(encode_graph6(g) + "\n" for g in graphs))
        print(f"wrote {DATA}")
        return 0
    shipped = {canonical_code(decode_graph6(line)) for line in DATA.read_text().split()}
    ok = shipped == {canonical_code(g) for g in graphs}
    print("shipped file matches" if ok else "shipped file differs")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
