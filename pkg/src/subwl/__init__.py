"""Subgraph-based Weisfeiler-Leman tests and a forward-only GNN-AK engine."""

from __future__ import annotations

__version__ = "0.1.0"

from .canon import CanonicalCode, are_isomorphic, canonical_code, count_automorphisms
from .errors import (
    CapacityError,
    DomainError,
    GraphFormatError,
    InternalConsistencyError,
    ParseError,
    SubWLError,
    ValidationError,
)
from .extract import (
    RootedSubgraph,
    UnionGraph,
    extract_all_egonets,
    extract_egonet,
    extract_rw_subgraph,
    node2vec_step_weights,
)
from .generators import cfi_gadget, cfi_pair, circulant, petersen, random_graph, random_regular, sr25, srg_pair
from .gnnak import WeightBundle, encode_subgraphs, forward, gin_layer, pool_encodings
from .graph import Graph, induced_subgraph, parse_edge_list, parse_graph6, serialize_edge_list
from .oracles import count_motif, graph_properties
from .sampling import SamplePlan, propagate_encodings, sample, scale_context
from .wl import Coloring, Fingerprint, Method, Verdict, distinguish, subgraph_wl, wl1

__all__ = [
    "CanonicalCode",
    "CapacityError",
    "Coloring",
    "DomainError",
    "Fingerprint",
    "Graph",
    "GraphFormatError",
    "InternalConsistencyError",
    "Method",
    "ParseError",
    "RootedSubgraph",
    "SamplePlan",
    "SubWLError",
    "UnionGraph",
    "ValidationError",
    "Verdict",
    "WeightBundle",
    "are_isomorphic",
    "canonical_code",
    "cfi_gadget",
    "cfi_pair",
    "circulant",
    "count_automorphisms",
    "count_motif",
    "distinguish",
    "encode_subgraphs",
    "extract_all_egonets",
    "extract_egonet",
    "extract_rw_subgraph",
    "forward",
    "gin_layer",
    "graph_properties",
    "induced_subgraph",
    "node2vec_step_weights",
    "parse_edge_list",
    "parse_graph6",
    "petersen",
    "pool_encodings",
    "propagate_encodings",
    "random_graph",
    "random_regular",
    "sample",
    "scale_context",
    "serialize_edge_list",
    "sr25",
    "srg_pair",
    "subgraph_wl",
    "wl1",
]
