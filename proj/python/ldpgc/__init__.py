"""Edge-LDP walk, path, and acyclic pattern counting."""

from ldpgc._core import (
    CommLedger,
    ErrorDecomposition,
    Estimate,
    Graph,
    IoError,
    Pattern,
    SizeGuardError,
    TreeForm,
    UsageError,
    automorphism_count,
    error_decompose,
    formulate_tree,
    gen_erdos_renyi,
    load_edge_list,
    load_edge_list_file,
    marked_pattern_count,
    parse_pattern,
    path_count_oriented,
    pattern_count,
    run_path,
    run_pattern,
    run_rr,
    run_star,
    run_walk,
    star_count,
    walk_count_oriented,
    walk_count_unoriented,
)

__all__ = [
    "CommLedger",
    "ErrorDecomposition",
    "Estimate",
    "Graph",
    "IoError",
    "Pattern",
    "SizeGuardError",
    "TreeForm",
    "UsageError",
    "automorphism_count",
    "error_decompose",
    "formulate_tree",
    "gen_erdos_renyi",
    "load_edge_list",
    "load_edge_list_file",
    "marked_pattern_count",
    "parse_pattern",
    "path_count_oriented",
    "pattern_count",
    "run_path",
    "run_pattern",
    "run_rr",
    "run_star",
    "run_walk",
    "star_count",
    "walk_count_oriented",
    "walk_count_unoriented",
]
