"""Single-pass estimation of maximum matching size in low-arboricity graph streams."""

from .estimator import (
    EstimatorConfig,
    InvalidConfig,
    MatchingEstimate,
    SamplerState,
    TrackedEdge,
    estimate_matching,
    finalize,
    init,
    process_edge,
    run,
)
from .graph import (
    DuplicateEdge,
    Edge,
    EdgeStream,
    EmptyGraph,
    Graph,
    InstanceTooLarge,
    ParseError,
    SelfLoop,
    VertexOutOfRange,
    exact_arboricity,
    generate_forest_union,
    maximum_matching_size,
    shuffle_stream,
    validate_stream,
)
from .oracles import (
    DiagnosticReport,
    PrefixOutOfRange,
    PrefixProfile,
    classify_edges,
    exact_e_alpha,
    exact_e_alpha_prefix,
    exact_e_star,
    tail_degrees,
)

__version__ = "0.1.0"
