"""Hidden-graph reconstruction through simulated query oracles.

The package provides the graph core and instance generators, oracle
sessions with exact query accounting, randomized and splitter-derived query
schemes, the reconstruction algorithms parameterized by maximum degree,
treewidth, degeneracy, and edge count, a round-robin race combinator,
cross-oracle simulation procedures, and a benchmark harness.
"""

from .bench import ExperimentConfig, ExperimentRecord, fit_scaling, run_experiment
from .bridges import (BridgeReport, components_via_mis, components_via_sep,
                      mis_via_cc, pairwise_neighborhood_via_mis, run_bridge,
                      sep_via_cc)
from .candidate import CandidateGraph, removal_query_count
from .errors import (BudgetExceededError, CapacityError, InvalidInputError,
                     ParameterTooSmallError, RaceExhaustedError)
from .families import generate
from .graphs import (Graph, Partition, components_bruteforce, graph_equal,
                     load_graph, save_graph)
from .oracles import OracleSession, drive_program, greedy_lex_mis, replay_transcript
from .params import (GraphParams, degeneracy, exact_treewidth, graph_params,
                     pairwise_connectivity, treewidth_leq)
from .race import RaceReport, SteppableRun, default_contenders, race
from .recon_degeneracy import reconstruct_degeneracy, reconstruct_unknown_degeneracy
from .recon_edges import find_neighbors, reconstruct_edge_bounded
from .recon_maxdeg import (reconstruct_bounded_connectivity,
                           reconstruct_bounded_degree, reconstruct_unknown_degree)
from .recon_treewidth import (TreeDecomposition, balanced_separator,
                              learn_supergraph, plan_prune_queries,
                              proper_coloring, prune_supergraph,
                              reconstruct_treewidth, reconstruct_unknown_treewidth,
                              tree_decomposition)
from .schemes import (QueryScheme, SchemeCheck, Splitter, Witness,
                      bernoulli_subset, build_splitter, load_scheme,
                      random_scheme, random_scheme_size, save_scheme,
                      scheme_from_splitter, verify_scheme, witness_count_bound)

__version__ = "0.1.0"

__all__ = [
    "BridgeReport", "BudgetExceededError", "CandidateGraph", "CapacityError",
    "ExperimentConfig", "ExperimentRecord", "Graph", "GraphParams",
    "InvalidInputError", "OracleSession", "ParameterTooSmallError", "Partition",
    "QueryScheme", "RaceExhaustedError", "RaceReport", "SchemeCheck",
    "Splitter", "SteppableRun", "TreeDecomposition", "Witness",
    "balanced_separator", "bernoulli_subset", "build_splitter",
    "components_bruteforce", "components_via_mis", "components_via_sep",
    "default_contenders", "degeneracy", "drive_program", "exact_treewidth",
    "find_neighbors", "fit_scaling", "generate", "graph_equal", "graph_params",
    "greedy_lex_mis", "learn_supergraph", "load_graph", "load_scheme",
    "mis_via_cc", "pairwise_connectivity", "pairwise_neighborhood_via_mis",
    "plan_prune_queries", "proper_coloring", "prune_supergraph", "race",
    "random_scheme", "random_scheme_size", "reconstruct_bounded_connectivity",
    "reconstruct_bounded_degree", "reconstruct_degeneracy",
    "reconstruct_edge_bounded", "reconstruct_treewidth",
    "reconstruct_unknown_degree", "reconstruct_unknown_degeneracy",
    "reconstruct_unknown_treewidth", "removal_query_count", "replay_transcript",
    "run_bridge", "run_experiment", "save_graph", "save_scheme",
    "scheme_from_splitter", "sep_via_cc", "tree_decomposition", "treewidth_leq",
    "verify_scheme", "witness_count_bound",
]
