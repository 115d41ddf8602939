"""
percol - perfect colorings of multipath graphs
==============================================

Verify, construct, enumerate and classify the perfect colorings of the
infinite multipath graphs C∞·K̄n and C∞·Kn.

Verification example:
  >>> from percol import PeriodicColoring, infer_matrix
  >>> c = PeriodicColoring.from_path([2, 1, 0, 0, 1, 2])
  >>> infer_matrix(c).rows
  ((1, 1, 0), (1, 0, 1), (0, 1, 1))

Enumeration example:
  >>> from percol import Family, brute_force_enumerate, theorem_enumerate, catalog_diff
  >>> oracle = brute_force_enumerate(Family.path(), 2, 4)
  >>> len(oracle)
  4
  >>> catalog_diff(oracle, theorem_enumerate(Family.path(), 2, 4))
  ((), ())
"""

from .codec import (
    ParseError,
    parse_catalog,
    parse_catalog_file,
    parse_coloring,
    parse_coloring_file,
    parse_edge_list,
    parse_matrix,
    serialize_catalog,
    serialize_catalog_to_file,
    serialize_coloring,
    serialize_coloring_to_file,
    serialize_edge_list,
    serialize_matrix,
    serialize_summary,
)
from .constructions import (
    Contradiction,
    DomainError,
    MirrorType,
    NotBiInfinite,
    OverlappingSupportsError,
    Parity,
    PsiNotPerfectError,
    Semicoloring,
    conjugate_semicolorings,
    disjunctive_multipath,
    is_bipartite_coloring,
    lift_block_monochrome,
    matched_check,
    path_series,
    propagate,
    series_cyclic,
    series_mirror,
    series_name,
    split_semicolorings,
    three_periodic_complete,
)
from .enumeration import (
    BUDGET_ENV_VAR,
    DEFAULT_BUDGET,
    BoundsMismatch,
    BudgetExceeded,
    Catalog,
    CatalogEntry,
    ClassLabel,
    ColoringClass,
    ConfigurationError,
    Unclassifiable,
    brute_force_enumerate,
    catalog_diff,
    classify,
    theorem_enumerate,
)
from .equivalence import (
    MatrixTestDivergence,
    TransitivityViolation,
    equivalence_partition,
    equivalent_colors_matrix,
    equivalent_colors_semantic,
    glue,
    is_reduced,
    is_splitting,
    reduce_coloring,
)
from .finite import (
    ColoredGraph,
    FiniteGraph,
    GraphError,
    InvariantViolation,
    PreconditionViolated,
    VertexColoring,
    check_graph,
    check_perfect_finite,
    cycle_graph,
    disjunctive_finite,
    graph_from_edges,
    lexicographic_product,
    sorted_edges,
    to_cycle_product,
    verify_perfect_finite,
)
from .multipath import (
    BlockProfile,
    ColorAbsentError,
    ColoringError,
    Family,
    Kind,
    NotPerfect,
    NotPerfectError,
    ParameterMatrix,
    PeriodicColoring,
    all_profiles,
    canonicalize,
    check_perfect,
    infer_matrix,
    neighbor_profile,
    profile_count,
    verify_periodic,
)

__all__ = [
    # Core types
    "Family",
    "Kind",
    "BlockProfile",
    "PeriodicColoring",
    "ParameterMatrix",
    "NotPerfect",
    # Verification
    "neighbor_profile",
    "infer_matrix",
    "check_perfect",
    "verify_periodic",
    "canonicalize",
    "all_profiles",
    "profile_count",
    # Finite graphs
    "FiniteGraph",
    "VertexColoring",
    "ColoredGraph",
    "cycle_graph",
    "graph_from_edges",
    "check_graph",
    "sorted_edges",
    "lexicographic_product",
    "check_perfect_finite",
    "verify_perfect_finite",
    "disjunctive_finite",
    "to_cycle_product",
    # Equivalence
    "equivalent_colors_semantic",
    "equivalent_colors_matrix",
    "equivalence_partition",
    "glue",
    "reduce_coloring",
    "is_reduced",
    "is_splitting",
    # Constructions
    "MirrorType",
    "Parity",
    "Semicoloring",
    "Contradiction",
    "NotBiInfinite",
    "series_cyclic",
    "series_mirror",
    "series_name",
    "path_series",
    "lift_block_monochrome",
    "disjunctive_multipath",
    "split_semicolorings",
    "is_bipartite_coloring",
    "conjugate_semicolorings",
    "matched_check",
    "three_periodic_complete",
    "propagate",
    # Enumeration
    "Catalog",
    "CatalogEntry",
    "ClassLabel",
    "ColoringClass",
    "Unclassifiable",
    "brute_force_enumerate",
    "theorem_enumerate",
    "classify",
    "catalog_diff",
    "DEFAULT_BUDGET",
    "BUDGET_ENV_VAR",
    # Formats
    "parse_coloring",
    "parse_coloring_file",
    "serialize_coloring",
    "serialize_coloring_to_file",
    "parse_matrix",
    "serialize_matrix",
    "parse_catalog",
    "parse_catalog_file",
    "serialize_catalog",
    "serialize_catalog_to_file",
    "serialize_summary",
    "parse_edge_list",
    "serialize_edge_list",
    # Exceptions and warnings
    "ColoringError",
    "ColorAbsentError",
    "NotPerfectError",
    "GraphError",
    "PreconditionViolated",
    "InvariantViolation",
    "TransitivityViolation",
    "MatrixTestDivergence",
    "DomainError",
    "OverlappingSupportsError",
    "PsiNotPerfectError",
    "BudgetExceeded",
    "BoundsMismatch",
    "ConfigurationError",
    "ParseError",
]

__version__ = "0.1.0"
