"""Flow-weighted interaction graphs and influence-ranking toolkit.

Pipeline shape: tweet JSONL -> interaction events -> flow graph ->
degree filter + largest component -> seven-metric centrality table ->
rankings / correlations / percentile leader subgraphs, with a CLI
(`flowrank`) and a read-only HTTP API over the artifacts.
"""

from .analytics import (
    CorrelationMatrix,
    HistogramSpec,
    RankedList,
    RankEntry,
    correlations,
    histogram,
    nearest_rank_threshold,
    rank,
    saturate,
)
from .centrality import (
    COUNTERS,
    METRICS,
    VARIABLES,
    CentralityConfig,
    CentralityError,
    CentralityTable,
    ConvergenceError,
    DisconnectedError,
    betweenness_centrality,
    closeness_centrality,
    compute_all,
    current_flow_betweenness,
    current_flow_closeness,
    degree_centrality,
    eigenvector_centrality,
    load_centrality,
    strength,
)
from .graph import FlowGraph, GraphError, GraphStats, SelfEdgeError, build_graph, from_weighted_edges
from .ingest import (
    DEFAULT_KEYWORDS,
    IngestReport,
    Interaction,
    InteractionRecord,
    KeywordSet,
    ParseError,
    UserRef,
    ingest_file,
    parse_record,
)
from .projection import (
    SubgraphProjection,
    export,
    from_json_document,
    percentile_subgraph,
    to_json_document,
    top_n_subgraph,
)

__version__ = "0.1.0"

__all__ = [
    "CorrelationMatrix", "HistogramSpec", "RankedList", "RankEntry",
    "correlations", "histogram", "nearest_rank_threshold", "rank", "saturate",
    "COUNTERS", "METRICS", "VARIABLES", "CentralityConfig", "CentralityError",
    "CentralityTable", "ConvergenceError", "DisconnectedError",
    "betweenness_centrality", "closeness_centrality", "compute_all",
    "current_flow_betweenness", "current_flow_closeness", "degree_centrality",
    "eigenvector_centrality", "load_centrality", "strength",
    "FlowGraph", "GraphError", "GraphStats", "SelfEdgeError", "build_graph",
    "from_weighted_edges",
    "DEFAULT_KEYWORDS", "IngestReport", "Interaction", "InteractionRecord",
    "KeywordSet", "ParseError", "UserRef", "ingest_file", "parse_record",
    "SubgraphProjection", "export", "from_json_document",
    "percentile_subgraph", "to_json_document", "top_n_subgraph",
    "__version__",
]
