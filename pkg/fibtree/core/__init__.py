from ._cnn import (
    CNN_ALPHABET,
    CSV_COLUMNS,
    admissible_patterns,
    cnn_entropy,
    cnn_entropy_routes,
    critical_a,
    degree1_discrepancies,
    dichotomy_entropy,
    is_linearly_separable,
    ordering_of,
    output_function,
    phase_diagram,
    realizable,
    region_census,
    region_index,
    spec_from_patterns,
    verify_mosaic_pattern,
    write_phase_csv,
)
from ._entropy import (
    GOLDEN,
    LN_GOLDEN,
    adjacency_matrix,
    classify_symbols,
    entropy,
    entropy_empirical,
    enumerate_simple_subsystems,
    evaluate_subsystems,
    perron_vector_check,
    spectral_radius,
)
from ._errors import (
    BadMatrix,
    DegenerateLogs,
    DepthCap,
    EmptyShift,
    EnumerationCap,
    FibTreeError,
    InputError,
    InvalidLetter,
    InvalidRootColor,
    NonConvergence,
    OnBoundary,
    ResourceCap,
    RouteDisagreement,
    SpecDocumentError,
    WorkCap,
)
from ._fib_lattice import (
    count_colorings_dp,
    enumerate_colorings_naive,
    is_valid_node,
    level_nodes,
    node_degree,
    slice_levels,
    slice_tree,
    support,
)
from ._shift_core import (
    derive_degree1,
    full_binary_viable,
    full_spec,
    gamma_sequence,
    gamma_two_step,
    golden_mean_spec,
    identity_spec,
    iter_gamma,
    raw_spec,
    recurrence_coefficients,
    spec_from_triples,
    spec_from_vertex_matrices,
    viability_prune,
)

__all__ = [
    # errors
    "FibTreeError",
    "InputError",
    "ResourceCap",
    "InvalidLetter",
    "InvalidRootColor",
    "DepthCap",
    "WorkCap",
    "BadMatrix",
    "EmptyShift",
    "EnumerationCap",
    "NonConvergence",
    "DegenerateLogs",
    "OnBoundary",
    "RouteDisagreement",
    "SpecDocumentError",
    # fib_lattice
    "is_valid_node",
    "level_nodes",
    "node_degree",
    "support",
    "slice_levels",
    "slice_tree",
    "enumerate_colorings_naive",
    "count_colorings_dp",
    # shift_core
    "full_binary_viable",
    "derive_degree1",
    "viability_prune",
    "raw_spec",
    "spec_from_triples",
    "spec_from_vertex_matrices",
    "golden_mean_spec",
    "full_spec",
    "identity_spec",
    "iter_gamma",
    "gamma_sequence",
    "recurrence_coefficients",
    "gamma_two_step",
    # entropy
    "GOLDEN",
    "LN_GOLDEN",
    "classify_symbols",
    "enumerate_simple_subsystems",
    "adjacency_matrix",
    "spectral_radius",
    "perron_vector_check",
    "evaluate_subsystems",
    "entropy",
    "entropy_empirical",
    # cnn
    "CNN_ALPHABET",
    "CSV_COLUMNS",
    "output_function",
    "admissible_patterns",
    "region_index",
    "ordering_of",
    "is_linearly_separable",
    "realizable",
    "spec_from_patterns",
    "dichotomy_entropy",
    "cnn_entropy_routes",
    "cnn_entropy",
    "critical_a",
    "phase_diagram",
    "region_census",
    "write_phase_csv",
    "degree1_discrepancies",
    "verify_mosaic_pattern",
]
