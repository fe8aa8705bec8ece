"""Conflict-free colorings of graphs that exclude an induced star K_1,k."""

from __future__ import annotations

__all__ = [
    "DEFAULT_SEED",
    "BoundViolationError",
    "CfonCertificate",
    "CfonResult",
    "CollisionStats",
    "ColoringEntry",
    "ColoringRecord",
    "ExitCode",
    "FlatColoring",
    "Graph",
    "GraphFormatError",
    "Hypergraph",
    "InequalityReport",
    "InequalityRow",
    "IsolatedVertexError",
    "LayeredColoring",
    "Lemma2Params",
    "Mode",
    "Neighborhood",
    "NeighborhoodHypergraph",
    "NotClawFreeError",
    "OracleLimitError",
    "PaletteLayout",
    "PartialColoring",
    "PreconditionError",
    "ProductColoring",
    "ResampleResult",
    "ResamplingTimeout",
    "StarWitness",
    "TimeoutReport",
    "TriPartition",
    "cf_color_by_degree",
    "cfcn_from_cfon",
    "cfon_color",
    "class_degree_max",
    "closed_neighborhood",
    "collision_statistics",
    "complete",
    "compute_r",
    "connected_graphs",
    "crossover_gamma",
    "cycle",
    "default_seed",
    "edge_size_range",
    "emit_dimacs",
    "emit_edge_list",
    "exact_cfcn_number",
    "exact_cfon_number",
    "exact_coloring",
    "exhaustive_cf_coloring",
    "expected_collisions",
    "find_induced_star",
    "gnp_random",
    "greedy_proper_coloring",
    "induced_subgraph",
    "is_bad_edge",
    "is_normalized",
    "is_proper",
    "isolated_vertices",
    "lemma3_bound",
    "lemma3_color",
    "lemma4_color",
    "line_graph",
    "line_graph_of_complete",
    "max_degree",
    "max_edge_intersection_count",
    "moser_tardos_cf",
    "neighborhood_hypergraph",
    "normalize",
    "open_neighborhood",
    "parse_coloring",
    "parse_dimacs",
    "parse_edge_list",
    "partition_v123",
    "path",
    "random_line_graph",
    "random_window_hypergraph",
    "read_graph",
    "remove_isolated",
    "shuffled_order",
    "star",
    "sweep_inequality",
    "theorem_color_bound",
    "total_colors",
    "unique_witnesses",
    "verify_cf_hypergraph",
    "verify_cfcn",
    "verify_cfon",
    "vertex_degree_max",
    "write_graph",
]

from ._contraction import PartialColoring, lemma3_bound, lemma3_color
from ._decomposition import (
    LayeredColoring,
    TriPartition,
    class_degree_max,
    greedy_proper_coloring,
    is_normalized,
    is_proper,
    normalize,
    partition_v123,
    shuffled_order,
)
from ._degree import cf_color_by_degree, exhaustive_cf_coloring, lemma4_color
from ._errors import (
    BoundViolationError,
    ExitCode,
    GraphFormatError,
    IsolatedVertexError,
    NotClawFreeError,
    OracleLimitError,
    PreconditionError,
    ResamplingTimeout,
)
from ._graph import (
    Graph,
    StarWitness,
    closed_neighborhood,
    complete,
    cycle,
    find_induced_star,
    gnp_random,
    induced_subgraph,
    isolated_vertices,
    line_graph,
    line_graph_of_complete,
    max_degree,
    open_neighborhood,
    path,
    random_line_graph,
    remove_isolated,
    star,
)
from ._hypergraph import (
    Hypergraph,
    NeighborhoodHypergraph,
    edge_size_range,
    max_edge_intersection_count,
    neighborhood_hypergraph,
    random_window_hypergraph,
    vertex_degree_max,
)
from ._io import (
    ColoringEntry,
    ColoringRecord,
    emit_dimacs,
    emit_edge_list,
    parse_coloring,
    parse_dimacs,
    parse_edge_list,
    read_graph,
    write_graph,
)
from ._lll import (
    CollisionStats,
    Lemma2Params,
    ResampleResult,
    TimeoutReport,
    collision_statistics,
    compute_r,
    crossover_gamma,
    expected_collisions,
    is_bad_edge,
    moser_tardos_cf,
)
from ._oracle import (
    InequalityReport,
    InequalityRow,
    Neighborhood,
    connected_graphs,
    exact_cfcn_number,
    exact_cfon_number,
    exact_coloring,
    sweep_inequality,
)
from ._pipeline import (
    CfonCertificate,
    CfonResult,
    FlatColoring,
    Mode,
    PaletteLayout,
    ProductColoring,
    cfcn_from_cfon,
    cfon_color,
    theorem_color_bound,
    total_colors,
)
from ._telemetry import DEFAULT_SEED, default_seed
from ._verify import unique_witnesses, verify_cf_hypergraph, verify_cfcn, verify_cfon
