"""Shannon-Parry measure node ranking, baseline centralities and walk checks."""

from .centrality import (
    KShellResult,
    RankingComparison,
    betweenness_centrality,
    closeness_centrality,
    compare_rankings,
    degree_centrality,
    eigenvector_centrality,
    kshell,
    pagerank,
    simple_random_walk,
    simple_random_walk_stationary,
)
from .errors import (
    ConvergenceError,
    GraphError,
    NotStronglyConnectedError,
    ParseError,
    PeriodicGraphError,
    SpmError,
)
from .graph import (
    ConnectivityReport,
    Graph,
    apply_threshold,
    connectivity,
    parse_edge_list,
    period,
    read_edge_list,
    restrict_to_largest_scc,
    strongly_connected_components,
    to_edge_list,
)
from .ranking import Measure, Ranking
from .spectral import (
    PerronData,
    SpmChain,
    build_transition,
    ks_entropy,
    path_measure,
    perron_eigens,
    spm_chain,
    spm_distribution,
    spm_rank,
    topological_entropy,
)
from .walker import WalkPath, WalkStats, enumerate_paths, sample_path, simulate, visit_frequencies

__version__ = "0.1.0"
