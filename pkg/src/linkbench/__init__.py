"""linkbench: neighborhood-similarity link prediction and from-scratch ML
baselines with a reproducible benchmark CLI."""

from .graph import Graph, build_graph
from .indices import (
    adamic_adar,
    common_neighbor_centrality,
    common_neighbor_count,
    jaccard,
)
from .evaluation import (
    EdgeSplit,
    ScoredPair,
    aupr,
    auc_roc,
    classification_report,
    precision_at_k,
    roc_points,
    sample_negatives,
    score_pairs,
    score_pairs_parallel,
    split_edges,
    split_edges_temporal,
)
from .synthgen import GeneratorSpec, barabasi_albert, erdos_renyi, stochastic_block
from .tree import DecisionTree, train_tree
from .learners import (
    extract_features,
    feature_matrix,
    predict,
    train_gradient_boosting,
    train_random_forest,
    train_stacking,
    train_svm,
)
from .serialize import load_model, save_model

__version__ = "0.1.0"

__all__ = [
    "Graph", "build_graph",
    "jaccard", "adamic_adar", "common_neighbor_centrality",
    "common_neighbor_count",
    "EdgeSplit", "ScoredPair", "split_edges", "split_edges_temporal",
    "sample_negatives", "score_pairs", "score_pairs_parallel",
    "auc_roc", "precision_at_k", "aupr", "roc_points", "classification_report",
    "GeneratorSpec", "erdos_renyi", "barabasi_albert", "stochastic_block",
    "DecisionTree", "train_tree",
    "extract_features", "feature_matrix", "predict",
    "train_svm", "train_random_forest", "train_gradient_boosting",
    "train_stacking",
    "save_model", "load_model",
]
