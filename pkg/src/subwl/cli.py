"""Command-line entry point: ``subwl <command> ...``.

Exit codes: 0 success, 1 failed expectation in a suite, 2 usage or invalid
input, 3 I/O or unreadable input file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__, kernels
from .errors import ParseError, SubWLError
from .extract import extract_all_egonets, extract_rw_subgraph
from .generators import cfi_pair, circulant, circulant_pair, petersen, random_graph, random_regular, sr25, srg_pair
from .gnnak import SEPARATION_THRESHOLD, bundle_for, embedding_distance, forward
from .graph import Graph, load_graphs, serialize_edge_list
from .oracles import MOTIFS, count_motif, graph_properties
from .sampling import sample
from .wl import Method, Verdict, compare

logger = logging.getLogger("subwl")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- sources


def _builtin(name: str) -> list[Graph]:
    table = {
        "circulant-pair": lambda: list(circulant_pair()),
        "srg16": lambda: list(srg_pair()),
        "cfi": lambda: list(cfi_pair()),
        "sr25": sr25,
        "petersen": lambda: [petersen()],
    }
    if name not in table:
        raise UsageError(f"unknown builtin source {name!r}; expected one of {sorted(table)}")
    return table[name]()


def load_source(spec: str, base: Path | None = None) -> list[Graph]:
    """Graphs named by ``spec``.

    ``spec`` is a file path (graph6 for ``.g6``/``.graph6``, edge list
    otherwise) or ``builtin:<name>``; a ``#i`` suffix selects one graph.
    """
    idx = None
    if "#" in spec:
        spec, _, tail = spec.rpartition("#")
        try:
            idx = int(tail)
        except ValueError:
            raise UsageError(f"bad graph index {tail!r}") from None
    if spec.startswith("builtin:"):
        graphs = _builtin(spec[len("builtin:") :])
    else:
        path = Path(spec)
        if base is not None and not path.is_absolute():
            path = base / path
        if not path.exists():
            raise FileNotFoundError(f"input file not found: {path}")
        graphs = load_graphs(str(path))
    if idx is not None:
        if not 0 <= idx < len(graphs):
            raise UsageError(f"{spec} has {len(graphs)} graphs, index {idx} out of range")
        return [graphs[idx]]
    return graphs


def load_one(spec: str) -> Graph:
    graphs = load_source(spec)
    if not graphs:
        raise UsageError(f"{spec} contains no graphs")
    return graphs[0]


# ----------------------------------------------------------------- output


def _flatten(rec: dict) -> dict:
    return {k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in rec.items()}


def emit(payload, args, stream=None) -> None:
    fmt = getattr(args, "format", "json")
    if fmt == "csv":
        buf = io.StringIO()
        rows = payload.get("records") if isinstance(payload, dict) and "records" in payload else None
        if rows is None:
            rows = [{"key": k, "value": v} for k, v in payload.items()] if isinstance(payload, dict) else [
                {"value": v} for v in payload
            ]
        rows = [_flatten(r) for r in rows]
        fields = list(dict.fromkeys(k for r in rows for k in r))
        w = csv.DictWriter(buf, fieldnames=fields)
        w.writeheader()
        w.writerows(rows)
        text = buf.getvalue()
    else:
        text = json.dumps(payload, indent=None if isinstance(payload, list) else 2) + "\n"
    if getattr(args, "out", None) and stream is None:
        Path(args.out).write_text(text)
    else:
        (stream or sys.stdout).write(text)


# --------------------------------------------------------------- commands


def _method_from_args(args) -> Method:
    return Method(
        args.method,
        k=args.k,
        iters=args.iters,
        inner_depth=args.inner_depth,
        root_mark=not args.no_root_mark,
    )


def cmd_wl_test(args) -> int:
    a, b = load_one(args.a), load_one(args.b)
    method = _method_from_args(args)
    verdict, fa, fb = compare(a, b, method, threads=args.threads)
    emit(
        {
            "method": method.label,
            "fingerprint_a": None if fa is None else fa.hex,
            "fingerprint_b": None if fb is None else fb.hex,
            "verdict": str(verdict),
        },
        args,
    )
    return EXIT_OK


def _parse_manifest(path: Path) -> list[dict]:
    if not path.exists():
        raise FileNotFoundError(f"manifest not found: {path}")
    entries = []
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise ParseError(f"manifest: {e.msg}", line=lineno) from None
        if not isinstance(obj, dict) or "a" not in obj:
            raise ParseError("manifest entry needs an 'a' source", line=lineno)
        entries.append(obj)
    return entries


def _cells(entries: list[dict], base: Path):
    """Expand manifest entries into (entry index, label, g, h, method, expect)."""
    cells = []
    for ei, e in enumerate(entries):
        ga = load_source(e["a"], base)
        if e.get("b") is not None:
            gb = load_source(e["b"], base)
            pairs = [(f"{e['a']}|{e['b']}", ga[0], gb[0])]
        else:
            if len(ga) < 2:
                raise UsageError(f"entry {ei}: source {e['a']} needs 'b' or at least two graphs")
            pairs = [(f"{e['a']}#{i}|#{j}", ga[i], ga[j]) for i in range(len(ga)) for j in range(i + 1, len(ga))]
        methods = e.get("methods", ["1wl"])
        if isinstance(methods, str):
            methods = [methods]
        params = e.get("params", {})
        parsed = []
        for m in methods:
            try:
                parsed.append(Method.parse(m, **params))
            except SubWLError as err:
                raise UsageError(str(err)) from None
        expect = e.get("expect")
        if isinstance(expect, str) or expect is None:
            expect = [expect] * len(parsed)
        if len(expect) != len(parsed):
            raise UsageError(f"entry {ei}: {len(expect)} expectations for {len(parsed)} methods")
        valid = {v.value for v in Verdict}
        for x in expect:
            if x is not None and x not in valid:
                raise UsageError(f"entry {ei}: unknown expectation {x!r}")
        for label, g, h in pairs:
            for m, x in zip(parsed, expect):
                cells.append((ei, label, g, h, m, x))
    return cells


def run_suite(manifest: str, threads: int = 1, seed: int = 0, command: str = "") -> dict:
    """Run every (pair, method) cell of a JSON-lines manifest into a report."""
    path = Path(manifest)
    cells = _cells(_parse_manifest(path), path.parent)

    def run(cell):
        ei, label, g, h, m, expect = cell
        t0 = time.perf_counter()
        verdict, fa, fb = compare(g, h, m)
        ms = (time.perf_counter() - t0) * 1000.0
        return {
            "entry": ei,
            "pair": label,
            "method": m.label,
            "params": {"k": m.k, "iters": m.iters, "inner_depth": m.inner_depth, "root_mark": m.root_mark},
            "fingerprint_a": None if fa is None else fa.hex,
            "fingerprint_b": None if fb is None else fb.hex,
            "verdict": str(verdict),
            "expect": expect,
            "ok": expect is None or expect == str(verdict),
            "ms": round(ms, 3),
            "seed": seed,
        }

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            records = list(ex.map(run, cells))
    else:
        records = [run(c) for c in cells]
    failures = sum(not r["ok"] for r in records)
    return {
        "tool": "subwl",
        "version": __version__,
        "command": command,
        "records": records,
        "summary": {
            "cells": len(records),
            "failures": failures,
            "non_isomorphic": sum(r["verdict"] == Verdict.NON_ISOMORPHIC.value for r in records),
            "total_ms": round(sum(r["ms"] for r in records), 3),
        },
    }


def cmd_suite(args) -> int:
    report = run_suite(args.manifest, args.threads, args.seed, " ".join(sys.argv[1:]))
    emit(report, args)
    return EXIT_FAIL if report["summary"]["failures"] else EXIT_OK


def cmd_extract(args) -> int:
    g = load_one(args.graph)
    if args.mode == "egonet":
        comps = extract_all_egonets(g, args.k).components
    else:
        comps = [
            extract_rw_subgraph(g, v, args.walk_len, args.repeats, seed=[args.seed, v]) for v in range(g.n)
        ]
    blocks = []
    for c in comps:
        head = f"# root={c.root} d2c={','.join(map(str, c.d2c.tolist()))}\n"
        head += f"# parent_ids={','.join(map(str, c.parent_ids.tolist()))}\n"
        blocks.append(head + serialize_edge_list(c.graph))
    text = "\n".join(blocks)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_sample(args) -> int:
    g = load_one(args.graph)
    union = extract_all_egonets(g, args.k)
    plan = sample(g, union, args.R, args.strategy, args.seed, first=args.first)
    emit(plan.to_dict(), args)
    return EXIT_OK


def _embed_kw(args) -> dict:
    return dict(
        outer_layers=args.L,
        inner_layers=args.t,
        k=args.k,
        mode=args.mode,
        pool=args.pool,
        graph_pool=args.graph_pool,
    )


def _bundle(args, graphs):
    return bundle_for(graphs, seed=args.seed, hidden=args.hidden, outer_layers=args.L, inner_layers=args.t, k=args.k)


def cmd_embed(args) -> int:
    g = load_one(args.graph)
    e = forward(g, _bundle(args, [g]), **_embed_kw(args))
    emit(e.tolist(), args)
    return EXIT_OK


def cmd_embed_pair(args) -> int:
    a, b = load_one(args.a), load_one(args.b)
    w = _bundle(args, [a, b])
    ea, eb = forward(a, w, **_embed_kw(args)), forward(b, w, **_embed_kw(args))
    d = embedding_distance(ea, eb)
    emit(
        {
            "a": ea.tolist(),
            "b": eb.tolist(),
            "max_abs_diff": d,
            "separated": d > SEPARATION_THRESHOLD,
            "seed": args.seed,
        },
        args,
    )
    return EXIT_OK


def cmd_count(args) -> int:
    g = load_one(args.graph)
    motifs = MOTIFS if args.motif == "all" else (args.motif,)
    emit({m: count_motif(g, m).count for m in motifs}, args)
    return EXIT_OK


def cmd_props(args) -> int:
    emit(graph_properties(load_one(args.graph)).to_dict(), args)
    return EXIT_OK


def cmd_generate(args) -> int:
    fam = args.family
    if fam == "circulant":
        if args.offsets:
            graphs = {"": circulant(args.n or 8, [int(x) for x in args.offsets.split(",")])}
        else:
            a, b = circulant_pair()
            graphs = {"_a": a, "_b": b}
    elif fam == "srg16":
        a, b = srg_pair()
        graphs = {"_shrikhande": a, "_rook": b}
    elif fam == "cfi":
        p = cfi_pair()
        graphs = {"_a": p.a, "_b": p.b}
    elif fam == "er":
        graphs = {"": random_graph(args.n or 10, args.p, args.seed)}
    else:
        graphs = {"": random_regular(args.n or 10, args.d, args.seed)}
    prefix = args.out or fam
    written = []
    for suffix, g in graphs.items():
        path = f"{prefix}{suffix}.el"
        Path(path).write_text(serialize_edge_list(g))
        written.append(path)
    sys.stdout.write(json.dumps({"family": fam, "seed": args.seed, "files": written}) + "\n")
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.graph:
        graphs = load_source(args.graph)
    else:
        graphs = [random_regular(args.n, args.d, seed=args.seed + i) for i in range(args.graphs)]
    records = []
    for i, g in enumerate(graphs):
        extract_all_egonets(g, args.k)  # warm-up (JIT compile on first use)
        t0 = time.perf_counter()
        for _ in range(args.repeat):
            u = extract_all_egonets(g, args.k)
        dt = (time.perf_counter() - t0) / args.repeat
        records.append(
            {
                "graph": i,
                "n": g.n,
                "m": g.m,
                "k": args.k,
                "backend": kernels.BACKEND,
                "union_nodes": u.total_nodes,
                "union_edges": u.total_edges,
                "blowup": u.total_nodes / max(g.n, 1),
                "relaxations": u.relaxations,
                "edges_per_s": u.total_edges / dt if dt > 0 else None,
                "ms": dt * 1000.0,
                "seed": args.seed,
            }
        )
    emit({"tool": "subwl", "version": __version__, "records": records}, args)
    return EXIT_OK


# ----------------------------------------------------------------- parser


def _common(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--seed", type=int, default=d(0), help="random seed (default 0)")
    p.add_argument("--threads", type=int, default=d(1), help="worker threads for independent cells")
    p.add_argument("--out", default=d(None), help="write output to this path (prefix for generate)")
    p.add_argument("--format", choices=("json", "csv"), default=d("json"))
    p.add_argument("-v", "--verbose", action="store_true", default=d(False))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subwl", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"subwl {__version__}")
    _common(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _common(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(fn=fn)
        return p

    def wl_opts(p):
        p.add_argument("--method", choices=("1wl", "sub1wl", "sub1wl-exact"), default="1wl")
        p.add_argument("--k", type=int, default=1, help="egonet hop radius")
        p.add_argument("--iters", type=int, default=None, help="outer rounds (default: node count)")
        p.add_argument("--inner-depth", type=int, default=None, help="inner 1-WL rounds (default: to stability)")
        p.add_argument("--no-root-mark", action="store_true", help="do not mark the root inside egonets")

    p = add("wl-test", cmd_wl_test, "compare two graphs with a WL-family test")
    wl_opts(p)
    p.add_argument("a")
    p.add_argument("b")

    p = add("distinguish-suite", cmd_suite, "run a JSON-lines manifest of pair tests")
    p.add_argument("manifest")

    p = add("extract", cmd_extract, "write every rooted subgraph as an edge-list block")
    p.add_argument("--mode", choices=("egonet", "rw"), default="egonet")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--walk-len", type=int, default=10)
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("graph")

    p = add("sample", cmd_sample, "SubgraphDrop root selection")
    p.add_argument("--strategy", choices=("random", "farthest", "mincover", "min_set_cover"), default="random")
    p.add_argument("--R", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--first", type=int, default=None, help="first root for the farthest strategy")
    p.add_argument("graph")

    def embed_opts(p):
        p.add_argument("--mode", choices=("ak", "ak+"), default="ak")
        p.add_argument("--L", type=int, default=2, help="outer layers")
        p.add_argument("--t", type=int, default=2, help="inner GIN layers")
        p.add_argument("--k", type=int, default=1)
        p.add_argument("--hidden", type=int, default=64)
        p.add_argument("--pool", choices=("SUM", "MEAN"), default="SUM")
        p.add_argument("--graph-pool", choices=("SUM", "MEAN"), default="SUM")

    p = add("embed", cmd_embed, "graph embedding from random-weight GNN-AK")
    embed_opts(p)
    p.add_argument("graph")

    p = add("embed-pair", cmd_embed_pair, "embed two graphs and report their max-norm difference")
    embed_opts(p)
    p.add_argument("a")
    p.add_argument("b")

    p = add("count", cmd_count, "substructure counts")
    p.add_argument("--motif", choices=("all", *MOTIFS), default="all")
    p.add_argument("graph")

    p = add("props", cmd_props, "connectivity, diameter, radius")
    p.add_argument("graph")

    p = add("generate", cmd_generate, "write hard-instance or random graphs as edge lists")
    p.add_argument("--family", choices=("circulant", "srg16", "cfi", "er", "regular"), required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--offsets", default=None, help="comma-separated circulant offsets")
    p.add_argument("--p", type=float, default=0.3, help="edge probability (er)")
    p.add_argument("--d", type=int, default=3, help="degree (regular)")

    p = add("bench", cmd_bench, "egonet extraction throughput and union-graph blowup")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--d", type=int, default=4)
    p.add_argument("--graphs", type=int, default=3)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--graph", default=None, help="benchmark this file instead of random regular graphs")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.fn(args)
    except (OSError, ParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, SubWLError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
