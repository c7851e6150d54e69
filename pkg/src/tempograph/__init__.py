"""tempograph: time series encoded as Markov transition fields, interpreted
as weighted network graphs with an exact vertex-to-time inverse map, and mined
through graph statistics for pattern discovery, anomaly candidates and
classification."""

from .anomaly import AnomalyReport, default_k, detect, isolation_scores
from .classify import (
    EncodingConfig,
    combined_features,
    one_nn,
    paired_significance,
    per_sample_stats,
    series_stats,
    standardize_stats,
)
from .encode import (
    AVERAGE,
    GAUSSIAN,
    QUANTILE,
    Binner,
    MarkovMatrix,
    TransitionField,
    assign_bins,
    blur,
    encode_series,
    make_binner,
    markov_matrix,
    read_field,
    transition_field,
    write_field,
)
from .estimators import (
    MarkovTransitionFieldTransformer,
    NetworkStatsTransformer,
    OneNearestNeighborClassifier,
)
from .exceptions import BinningError, NumericError, ParseError
from .generators import CompoundSpec, RarePattern, compound, lorenz, rossler
from .ingest import Dataset, TimeSeries, load_ucr, load_ucr_dataset, paa, write_ucr, znormalize
from .mapping import Shapelet, community_shapelets, selection_to_spans, vertex_to_span
from .netgraph import (
    STAT_NAMES,
    NetworkGraph,
    NetworkStats,
    annotate,
    build_graph,
    clustering_coefficients,
    graph_document,
    graph_stats,
    louvain,
    pagerank,
    partition_modularity,
    vertex_spans,
    write_graphml,
)

__version__ = "0.1.0"

__all__ = [
    "AnomalyReport", "default_k", "detect", "isolation_scores",
    "EncodingConfig", "combined_features", "one_nn", "paired_significance",
    "per_sample_stats", "series_stats", "standardize_stats",
    "AVERAGE", "GAUSSIAN", "QUANTILE", "Binner", "MarkovMatrix",
    "TransitionField", "assign_bins", "blur", "encode_series", "make_binner",
    "markov_matrix", "read_field", "transition_field", "write_field",
    "MarkovTransitionFieldTransformer", "NetworkStatsTransformer",
    "OneNearestNeighborClassifier",
    "BinningError", "NumericError", "ParseError",
    "CompoundSpec", "RarePattern", "compound", "lorenz", "rossler",
    "Dataset", "TimeSeries", "load_ucr", "load_ucr_dataset", "paa",
    "write_ucr", "znormalize",
    "Shapelet", "community_shapelets", "selection_to_spans", "vertex_to_span",
    "STAT_NAMES", "NetworkGraph", "NetworkStats", "annotate", "build_graph",
    "clustering_coefficients", "graph_document", "graph_stats", "louvain",
    "pagerank", "partition_modularity", "vertex_spans", "write_graphml",
    "__version__",
]
