"""Exact counting of connected subgraphs (the core index F) and checks of its extremal theory."""

from .counting import (
    core_index,
    core_index_bruteforce,
    count_containing,
    f_all_vertices,
    f_vector,
    subgraph_core,
    tree_core_index,
)
from .extremal import CheckResult, ExtremalReport, scan, theorem_ids, verify_theorem, wiener_correlation
from .families import FamilySpec, Kind, build, enumerate_labeled_graphs, enumerate_labeled_trees, parse_spec, spec
from .formats import ParseError, decode_graph6, encode_graph6, format_edge_list, parse_edge_list
from .graph import Graph, GraphError, SizeGuardError, canonical_form, from_edge_list, is_isomorphic, wiener_index

__version__ = "0.1.0"

__all__ = [
    "CheckResult", "ExtremalReport", "FamilySpec", "Graph", "GraphError", "Kind", "ParseError",
    "SizeGuardError", "build", "canonical_form", "core_index", "core_index_bruteforce", "count_containing",
    "decode_graph6", "encode_graph6", "enumerate_labeled_graphs", "enumerate_labeled_trees", "f_all_vertices",
    "f_vector", "format_edge_list", "from_edge_list", "is_isomorphic", "parse_edge_list", "parse_spec", "scan",
    "spec", "subgraph_core", "theorem_ids", "tree_core_index", "verify_theorem", "wiener_correlation",
    "wiener_index",
]
