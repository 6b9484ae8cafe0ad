"""End-to-end plumbing shared by the CLI and the benchmark tests.

Wires split -> score -> metrics for the similarity indices and
split -> features -> train -> report for the learners, against one shared
EdgeSplit so methods stay comparable.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

import numpy as np

from .errors import InvalidParameterError
from .evaluation import (
    EdgeSplit,
    ScoredPair,
    aupr,
    auc_roc,
    classification_report,
    labeled_pairs,
    precision_at_k,
    roc_points,
    sample_negatives,
    score_pairs,
)
from .graph import Graph, build_graph
from .indices import (
    adamic_adar,
    common_neighbor_centrality,
    common_neighbor_count,
    jaccard,
)
from .learners import (
    Model,
    extract_features,
    feature_matrix,
    predict,
    train_gradient_boosting,
    train_random_forest,
    train_stacking,
    train_svm,
)

INDEX_METHODS = ("cn", "jc", "aai", "cnc")
LEARNER_METHODS = ("svm", "gb", "rf", "stacking")
ALL_METHODS = INDEX_METHODS + LEARNER_METHODS


def index_scorer(method: str, alpha: float = 0.8) -> Callable[[Graph, int, int], float]:
    if method == "jc":
        return jaccard
    if method == "aai":
        return adamic_adar
    if method == "cn":
        return common_neighbor_count
    if method == "cnc":
        return lambda g, u, v: common_neighbor_centrality(g, u, v, alpha)
    raise InvalidParameterError(f"unknown index method {method!r}")


def train_negatives(g: Graph, split: EdgeSplit,
                    negative_ratio: float = 1.0) -> tuple[tuple[int, int], ...]:
    """Negatives for the train positives, disjoint from the evaluation
    negatives and from the original edge set; seeded off the split seed."""
    seed = int(np.random.SeedSequence([split.seed, 3]).generate_state(1)[0])
    count = round(negative_ratio * len(split.train_pos))
    exclude = set(split.test_neg) | set(split.valid_neg)
    return tuple(sample_negatives(g, count, seed, exclude=exclude))


def split_pair_sets(g: Graph, split: EdgeSplit,
                    negative_ratio: float = 1.0) -> dict[str, list[tuple[int, int, int]]]:
    """Labeled (u, v, label) lists for the train/test/valid evaluation sets."""
    tneg = train_negatives(g, split, negative_ratio)
    return {
        "train": labeled_pairs(split.train_pos, tneg),
        "test": labeled_pairs(split.test_pos, split.test_neg),
        "valid": labeled_pairs(split.valid_pos, split.valid_neg),
    }


def ranking_metrics(scored: Sequence[ScoredPair], k: int) -> dict:
    k_eff = min(k, len(scored))
    return {
        "auc_roc": auc_roc(scored),
        "p_at_k": {"k": k_eff, "value": precision_at_k(scored, k_eff)},
        "aupr": aupr(scored),
    }


def evaluate_index(split: EdgeSplit,
                   pair_sets: dict[str, list[tuple[int, int, int]]],
                   method: str, alpha: float = 0.8, k: int = 50) -> dict:
    """Three-set ranking metrics for one similarity index, scored against the
    train graph (held-out edges never influence their own score)."""
    scorer = index_scorer(method, alpha)
    sets = {}
    for name, pairs in pair_sets.items():
        scored = score_pairs(scorer, split.train_graph, pairs)
        sets[name] = ranking_metrics(scored, k)
    return {"method": method, "sets": sets}


def scored_pairs_for_index(split: EdgeSplit,
                           pairs: Sequence[tuple[int, int, int]],
                           method: str, alpha: float = 0.8) -> list[ScoredPair]:
    return score_pairs(index_scorer(method, alpha), split.train_graph, pairs)


def learner_train_data(g: Graph, split: EdgeSplit, alpha: float = 0.8,
                       negative_ratio: float = 1.0,
                       inner_fraction: float = 0.25) -> tuple[np.ndarray, np.ndarray]:
    """Leakage-free training matrix for the learners.

    Training positives must look like test positives: non-edges of the graph
    their features are computed on.  So the train edges are split once more:
    the larger part forms an inner feature graph, the held-out part becomes
    the positive training rows, paired with freshly sampled negatives.
    Features for test/valid pairs are computed on the full train graph, whose
    relation to those pairs is the same.
    """
    if not (0.0 < inner_fraction < 1.0):
        raise InvalidParameterError(
            f"inner_fraction must be in (0, 1), got {inner_fraction}")
    ss = np.random.SeedSequence([split.seed, 4])
    s_shuffle, s_neg = (int(s) for s in ss.generate_state(2))
    order = np.random.default_rng(s_shuffle).permutation(len(split.train_pos))
    n_inner = max(1, int(inner_fraction * len(split.train_pos)))
    inner_pos = [split.train_pos[i] for i in order[:n_inner]]
    feature_edges = [split.train_pos[i] for i in order[n_inner:]]
    feature_graph = build_graph(feature_edges, g.node_count)
    exclude = set(split.test_neg) | set(split.valid_neg)
    inner_neg = sample_negatives(g, round(negative_ratio * len(inner_pos)),
                                 s_neg, exclude=exclude)
    return feature_matrix(feature_graph, labeled_pairs(inner_pos, inner_neg),
                          alpha)


DEFAULT_HYPERPARAMS: dict[str, dict] = {
    "svm": {"C": 0.01, "eta": 0.01, "epochs": 50},
    "gb": {"T": 100, "eta": 0.1, "max_depth": 3},
    "rf": {"n_trees": 50, "max_depth": 8, "min_leaf": 1},
    "stacking": {"folds": 5},
}


def train_method(method: str, X: np.ndarray, y: np.ndarray, seed: int,
                 hyperparams: Optional[dict] = None) -> Model:
    hp = dict(DEFAULT_HYPERPARAMS[method])
    hp.update(hyperparams or {})
    if method == "svm":
        return train_svm(X, y, seed=seed, **hp)
    if method == "gb":
        return train_gradient_boosting(X, y, seed=seed, **hp)
    if method == "rf":
        return train_random_forest(X, y, seed=seed, **hp)
    if method == "stacking":
        return train_stacking(X, y, seed=seed, **hp)
    raise InvalidParameterError(f"unknown learner method {method!r}")


def model_scored_pairs(model: Model, split: EdgeSplit,
                       pairs: Sequence[tuple[int, int, int]],
                       alpha: float = 0.8) -> list[ScoredPair]:
    out = []
    for u, v, label in pairs:
        x = extract_features(split.train_graph, u, v, alpha)
        _, score = predict(model, x)
        out.append(ScoredPair(u, v, score, label))
    return out


def evaluate_learner(model: Model, split: EdgeSplit,
                     pair_sets: dict[str, list[tuple[int, int, int]]],
                     alpha: float = 0.8, k: int = 50,
                     eval_sets: Sequence[str] = ("test", "valid")) -> dict:
    """Classification report plus ranking metrics per evaluation set."""
    sets = {}
    for name in eval_sets:
        pairs = pair_sets[name]
        X, y = feature_matrix(split.train_graph, pairs, alpha)
        predicted = [predict(model, x)[0] for x in X]
        scored = model_scored_pairs(model, split, pairs, alpha)
        sets[name] = ranking_metrics(scored, k)
        sets[name]["report"] = classification_report(
            predicted, [int(t) for t in y]).to_dict()
    return {"sets": sets}
