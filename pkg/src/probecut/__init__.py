"""probecut: exact d-cut, matching cut and perfect matching cut machinery
for partitioned probe graphs, with brute-force oracles, hardness-reduction
generators and a batch CLI."""

from .errors import (
    GenerationTimeout,
    InvalidCertificate,
    InvalidEdge,
    InvalidInstance,
    InvalidSatInstance,
    NoEdges,
    NotACograph,
    NotBipartite,
    NotConnected,
    NotCubic,
    OracleScaleExceeded,
    ParseError,
    PartialColouring,
    PreconditionViolation,
    ProbeCutError,
    StructureViolation,
    UnsupportedD,
    UnsupportedPattern,
    WrongCase,
)
from .graph import (
    Graph,
    Pattern,
    PartitionedProbeGraph,
    ProbeCertificate,
    build_graph,
    connected_components,
    cycle_pattern,
    diamond_pattern,
    dominating_edge,
    find_induced,
    independent_pattern,
    induced_subgraph,
    is_connected,
    is_p4_free,
    join_split,
    parse_pattern,
    path_pattern,
    random_probe_hfree,
    sp1_p4_pattern,
    split_forbidden_patterns,
    star_pattern,
    two_p2_pattern,
    verify_probe_certificate,
)
from .colouring import (
    BLUE,
    RED,
    REJECTED,
    Colouring,
    CutCertificate,
    PrecolouredPair,
    Violation,
    colour_process,
    complete_independent_max_cut,
    complete_independent_perfect,
    cut_edges,
    enumerate_seed_colourings,
    max_bipartite_matching,
    validate_colouring,
)
from .oracles import (
    backtrack_dcut,
    brute_dcut,
    brute_mmc,
    brute_pmc,
    brute_probe_certificate,
    brute_sat,
)
from .reductions import (
    SatInstance,
    bipartite_to_split,
    moshi_double,
    random_sat_instance,
    sat_to_4p1,
    subdivide4,
    validate_sat_shape,
)
from .solvers import (
    NonProbeType,
    SolveReport,
    classify_nonprobe,
    find_p_dominating_pair,
    seed_sets,
    solve_dcut,
    solve_mmc,
    solve_pmc,
)

__all__ = [name for name in dir() if not name.startswith("_")]
