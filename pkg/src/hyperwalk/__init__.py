"""Random-walk clustering of hypergraphs with edge-dependent vertex weights."""

from .algorithms import (
    ALGORITHMS,
    ClusterOptions,
    ClusterRun,
    chc,
    crwc,
    jnmf_cluster,
    jsnmf_cluster,
    kmeans_cluster,
    nmf_cluster,
    rdc_spec,
    rdc_sym,
    run_algorithm,
    sbc,
)
from .estimators import (
    CHC,
    CRWC,
    SBC,
    JointNMFCluster,
    JointSymNMFCluster,
    KMeansCluster,
    NMFCluster,
    RDCSpec,
    RDCSym,
    RepresentationTransformer,
    check_hypergraph,
)
from .exceptions import DisconnectedHypergraphError, FormatError, HypergraphError, NonConvergenceError
from .hypergraph import Hypergraph, connected_components, is_connected, largest_component, validate
from .metrics import agreement, av_conductance, av_ncut, directed_ncut, matched_f1, matched_jaccard, nmi
from .representations import (
    chung_adjacency,
    combinatorial_laplacian,
    core_matrix,
    crwc_transition,
    cucuringu_skew,
    li_zhang_gamma,
    normalized_laplacian,
    representation,
    zhou_delta,
)
from .walk import WalkState, detailed_balance_residual, random_walk, stationary_distribution, transition_matrix

__version__ = "0.1.0"
