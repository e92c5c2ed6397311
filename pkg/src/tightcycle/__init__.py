"""Tight-cycle search in r-uniform hypergraphs through their r-line-graphs."""

from ._kernels import BACKEND
from .cycles import (
    BalancedPartition,
    ChainStep,
    Kind,
    SearchOutcome,
    SearchParams,
    Stage,
    assemble_cycle,
    balanced_partition,
    connect,
    density_increment_search,
    find_cycle_of_length,
    proof_constants,
)
from .errors import (
    ExpansionFailed,
    FormatError,
    PartitionFailed,
    PreconditionError,
    TightCycleError,
    TooLarge,
)
from .expander import (
    ExpanderCertificate,
    ExpanderParams,
    expander_cover,
    extract_expander,
    find_sparse_cut,
    peel,
    verify_expander_exact,
)
from .generators import (
    gen_complete_multipartite,
    gen_full_grid,
    gen_random_rpartite,
    gen_random_uniform,
    gen_star,
    gen_tight_cycle,
)
from .hypergraph import Hypergraph, format_hypergraph, make_r_partite, parse_hypergraph
from .linegraph import (
    Coordinate,
    DensityStats,
    LineGraph,
    delete_coordinates,
    from_hypergraph,
    induced,
    neighborhood,
    neighborhoods,
    stats,
    to_hypergraph,
)
from .oracle import brute_force_tight_cycle, validate_tight_cycle
from .sigma import (
    SigmaPath,
    reach,
    reverse,
    sigma_boundary,
    sigma_neighbors,
    validate_sigma_path,
)

__version__ = "0.1.0"
