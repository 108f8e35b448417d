"""Spectral extremal analysis of graphs without intersecting triangles or
quadrangles as a minor: constructions, A_alpha indices, exact minor tests,
and exhaustive desk-scale verification."""

from .canonical import are_isomorphic, canonical_form, canonical_graph
from .enumeration import (
    DensityProfile,
    Family,
    GraphStream,
    SearchReport,
    edge_density_profile,
    enumerate_graphs,
    is_minor_free,
    merge_reports,
    search_extremal,
    stream_from_graph6_file,
)
from .graph6 import Graph6ParseError, iter_graph6_file, parse_graph6, write_graph6
from .graphs import (
    MAX_VERTICES,
    CapacityError,
    Graph,
    complement,
    disjoint_union,
    extremal_fs,
    extremal_qt,
    friendship,
    intersection_lower_bound,
    join,
    k_copies,
    make_complete,
    make_complete_bipartite,
    make_cycle,
    make_empty,
    make_path,
    matching_graph,
    quadrangle_book,
)
from .minors import (
    MinorModel,
    MinorVerdict,
    SearchLimitError,
    StructureReport,
    StructureViolation,
    check_fs_structure,
    check_qt_structure,
    has_minor,
    is_fs_minor_free,
    is_qt_minor_free,
    minor_closure_oracle,
    subgraph_contains,
    validate_model,
)
from .spectral import (
    ConvergenceError,
    NikiforovBounds,
    NonEquitablePartitionError,
    QuotientMatrix,
    SpectralResult,
    alpha_index,
    alpha_matrix,
    f_inequality,
    jacobi_eigh,
    join_quotient_index,
    nikiforov_lower_bound,
    power_iteration,
    quotient_matrix,
    signless_laplacian_index,
)

__all__ = [name for name in dir() if not name.startswith("_")]
