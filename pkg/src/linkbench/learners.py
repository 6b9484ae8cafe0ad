"""From-scratch ML baselines over topological pair features.

Linear SVM trained by hinge-loss SGD, bagged decision-tree forest with
majority vote, gradient-boosted regression trees on squared error, and a
two-level stacking ensemble (SVM + GB + RF bases, RF meta) built from
out-of-fold base scores.

Every trainer is deterministic given (dataset, params, seed).  Forest trees
get independent seeds from numpy's SeedSequence spawn of the forest seed,
so a parallel implementation of tree fitting would agree with the serial
one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .errors import (
    DegenerateFoldError,
    DegenerateLabelsError,
    InvalidParameterError,
    MalformedInputError,
)
from .graph import Graph
from .indices import (
    adamic_adar,
    common_neighbor_centrality,
    common_neighbor_count,
    jaccard,
)
from .tree import DecisionTree, train_tree

FEATURE_NAMES = (
    "common_neighbors", "jaccard", "adamic_adar", "cnc",
    "degree_u", "degree_v", "union_size",
)
N_FEATURES = len(FEATURE_NAMES)


def extract_features(g: Graph, u: int, v: int, alpha: float = 0.8) -> np.ndarray:
    """Fixed-order 7-feature vector for a candidate pair, on the train graph."""
    cn = common_neighbor_count(g, u, v)
    union = len(g.neighbor_set(u) | g.neighbor_set(v))
    return np.array([
        cn,
        jaccard(g, u, v),
        adamic_adar(g, u, v),
        common_neighbor_centrality(g, u, v, alpha),
        float(g.degree(u)),
        float(g.degree(v)),
        float(union),
    ])


def feature_matrix(g: Graph, pairs: Sequence[tuple[int, int, int]],
                   alpha: float = 0.8) -> tuple[np.ndarray, np.ndarray]:
    """(X, y) for a labeled pair list."""
    X = np.array([extract_features(g, u, v, alpha) for u, v, _ in pairs])
    y = np.array([label for _, _, label in pairs], dtype=float)
    return X, y


def _check_matrix(X: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2 or len(X) == 0 or len(X) != len(y):
        raise MalformedInputError(
            f"need non-empty aligned X, y; got {X.shape} / {y.shape}")
    if not np.isfinite(X).all():
        raise MalformedInputError("non-finite feature values")
    return X, y


# ---------------------------------------------------------------------------
# Linear SVM (hinge-loss SGD)
# ---------------------------------------------------------------------------

@dataclass
class LinearSvmModel:
    w: np.ndarray
    b: float
    C: float
    eta: float
    mean: np.ndarray   # standardization, applied before w.x + b
    std: np.ndarray
    epochs_run: int = 0

    def score(self, x: np.ndarray) -> float:
        x = np.asarray(x, dtype=float)
        if x.shape != self.w.shape:
            raise MalformedInputError(
                f"expected {self.w.shape[0]} features, got {x.shape}")
        z = (x - self.mean) / self.std
        return float(self.w @ z + self.b)

    def predict_label(self, x: np.ndarray) -> int:
        # score exactly 0 maps to class 1 (documented tie rule)
        return 1 if self.score(x) >= 0.0 else 0


def svm_sgd_step(w: np.ndarray, b: float, x: np.ndarray, y: float,
                 eta: float, C: float) -> tuple[np.ndarray, float]:
    """One per-sample update: margin violation uses the hinge gradient,
    otherwise only the ridge shrinkage applies.  y in {-1, +1}."""
    if y * (w @ x + b) < 1.0:
        w = w + eta * (y * x - 2.0 * C * w)
        b = b + eta * y
    else:
        w = w - eta * (2.0 * C * w)
    return w, b


def train_svm(X: np.ndarray, y: np.ndarray, C: float = 0.01, eta: float = 0.01,
              epochs: int = 100, seed: int = 0,
              tol: float = 1e-6) -> LinearSvmModel:
    """Hinge-loss SGD on standardized features.

    Labels are {0, 1}, remapped internally to {-1, +1}.  Sample order is
    reshuffled per epoch.  Stops early when the epoch objective
    (C * ||w||^2 + mean hinge) improves by less than `tol` relative.
    """
    X, y = _check_matrix(X, y)
    if C <= 0 or eta <= 0:
        raise InvalidParameterError(f"C and eta must be > 0, got C={C}, eta={eta}")
    if epochs < 1:
        raise InvalidParameterError(f"epochs must be >= 1, got {epochs}")
    classes = set(np.unique(y))
    if not classes <= {0.0, 1.0} or len(classes) < 2:
        raise DegenerateLabelsError(f"need labels {{0, 1}} with both present, got {classes}")
    mean = X.mean(axis=0)
    std = X.std(axis=0)
    std = np.where(std == 0.0, 1.0, std)
    Z = (X - mean) / std
    ys = np.where(y == 1.0, 1.0, -1.0)
    rng = np.random.default_rng(seed)
    w = np.zeros(X.shape[1])
    b = 0.0
    prev_obj = None
    epochs_run = 0
    for _ in range(epochs):
        for i in rng.permutation(len(Z)):
            w, b = svm_sgd_step(w, b, Z[i], ys[i], eta, C)
        epochs_run += 1
        hinge = np.maximum(0.0, 1.0 - ys * (Z @ w + b)).mean()
        obj = C * float(w @ w) + float(hinge)
        if prev_obj is not None and abs(prev_obj - obj) <= tol * max(abs(prev_obj), 1.0):
            break
        prev_obj = obj
    return LinearSvmModel(w=w, b=b, C=C, eta=eta, mean=mean, std=std,
                          epochs_run=epochs_run)


# ---------------------------------------------------------------------------
# Random forest
# ---------------------------------------------------------------------------

@dataclass
class RandomForestModel:
    trees: list[DecisionTree]
    features_per_split: int
    seed: int

    def proba(self, x: np.ndarray) -> float:
        return float(np.mean([t.predict_value(x) for t in self.trees]))

    def predict_label(self, x: np.ndarray) -> int:
        votes = sum(t.predict_label(x) for t in self.trees)
        # exact tie resolves to class 1
        return 1 if 2 * votes >= len(self.trees) else 0


def train_random_forest(X: np.ndarray, y: np.ndarray, n_trees: int = 50,
                        max_depth: int = 8, min_leaf: int = 1,
                        features_per_split: Optional[int] = None,
                        seed: int = 0, bootstrap: bool = True) -> RandomForestModel:
    """Bagged classification trees with per-split random feature subsets.

    `bootstrap=False` is a test hook making a 1-tree full-feature forest
    coincide with a single train_tree call.
    """
    X, y = _check_matrix(X, y)
    m = X.shape[1]
    if features_per_split is None:
        features_per_split = max(1, int(np.sqrt(m)))
    if not (1 <= features_per_split <= m):
        raise InvalidParameterError(
            f"features_per_split must be in [1, {m}], got {features_per_split}")
    if n_trees < 1:
        raise InvalidParameterError(f"n_trees must be >= 1, got {n_trees}")
    ss = np.random.SeedSequence(seed)
    trees = []
    for child in ss.spawn(n_trees):
        boot_seed, tree_seed = (int(s) for s in child.generate_state(2))
        if bootstrap:
            idx = np.random.default_rng(boot_seed).integers(0, len(X), size=len(X))
            Xb, yb = X[idx], y[idx]
        else:
            Xb, yb = X, y
        trees.append(train_tree(Xb, yb, max_depth=max_depth, min_leaf=min_leaf,
                                feature_subset=features_per_split,
                                seed=tree_seed, mode="classification"))
    return RandomForestModel(trees=trees, features_per_split=features_per_split,
                             seed=seed)


# ---------------------------------------------------------------------------
# Gradient boosting (squared error on {0,1} targets)
# ---------------------------------------------------------------------------

@dataclass
class GradientBoostingModel:
    f0: float
    trees: list[DecisionTree]
    eta: float

    def raw_score(self, x: np.ndarray) -> float:
        return self.f0 + self.eta * sum(t.predict_value(x) for t in self.trees)

    def proba(self, x: np.ndarray) -> float:
        return min(1.0, max(0.0, self.raw_score(x)))

    def predict_label(self, x: np.ndarray) -> int:
        return 1 if self.proba(x) >= 0.5 else 0


def train_gradient_boosting(X: np.ndarray, y: np.ndarray, T: int = 100,
                            eta: float = 0.1, max_depth: int = 3,
                            min_leaf: int = 1,
                            seed: int = 0) -> GradientBoostingModel:
    """Boosting on squared error: F0 = label mean, each round fits a
    regression tree to the residuals y - F and adds eta times it."""
    X, y = _check_matrix(X, y)
    if T < 1:
        raise InvalidParameterError(f"T must be >= 1, got {T}")
    if eta <= 0:
        raise InvalidParameterError(f"eta must be > 0, got {eta}")
    f0 = float(np.mean(y))
    F = np.full(len(y), f0)
    trees = []
    ss = np.random.SeedSequence(seed)
    for child in ss.spawn(T):
        residual = y - F
        tree = train_tree(X, residual, max_depth=max_depth, min_leaf=min_leaf,
                          seed=int(child.generate_state(1)[0]),
                          mode="regression")
        F = F + eta * tree.predict_values(X)
        trees.append(tree)
    return GradientBoostingModel(f0=f0, trees=trees, eta=eta)


# ---------------------------------------------------------------------------
# Stacking ensemble
# ---------------------------------------------------------------------------

@dataclass
class StackingModel:
    svm: LinearSvmModel
    gb: GradientBoostingModel
    rf: RandomForestModel
    meta: RandomForestModel
    folds: int

    def base_scores(self, x: np.ndarray) -> np.ndarray:
        return np.array([self.svm.score(x), self.gb.raw_score(x),
                         self.rf.proba(x)])

    def proba(self, x: np.ndarray) -> float:
        return self.meta.proba(self.base_scores(x))

    def predict_label(self, x: np.ndarray) -> int:
        return self.meta.predict_label(self.base_scores(x))


def _fold_indices(n: int, folds: int, seed: int) -> list[np.ndarray]:
    order = np.random.default_rng(seed).permutation(n)
    return [order[f::folds] for f in range(folds)]


def stacking_meta_features(X: np.ndarray, y: np.ndarray, folds: int,
                           seed: int,
                           svm_params: Optional[dict] = None,
                           gb_params: Optional[dict] = None,
                           rf_params: Optional[dict] = None) -> np.ndarray:
    """Leakage-free 3-column meta dataset: one out-of-fold base-score triple
    (SVM margin, GB raw score, RF probability) per original row."""
    X, y = _check_matrix(X, y)
    if folds < 2:
        raise InvalidParameterError(f"folds must be >= 2, got {folds}")
    ss = np.random.SeedSequence(seed)
    s_fold, s_svm, s_gb, s_rf, _ = (int(s) for s in ss.generate_state(5))
    fold_idx = _fold_indices(len(X), folds, s_fold)
    meta_X = np.zeros((len(X), 3))
    for f, idx in enumerate(fold_idx):
        mask = np.ones(len(X), dtype=bool)
        mask[idx] = False
        y_tr = y[mask]
        if len(set(y_tr)) < 2 or len(set(y[idx])) < 2:
            raise DegenerateFoldError(
                f"fold {f} or its complement is missing a class")
        svm = train_svm(X[mask], y_tr, seed=s_svm, **(svm_params or {}))
        gb = train_gradient_boosting(X[mask], y_tr, seed=s_gb, **(gb_params or {}))
        rf = train_random_forest(X[mask], y_tr, seed=s_rf, **(rf_params or {}))
        for i in idx:
            meta_X[i] = (svm.score(X[i]), gb.raw_score(X[i]), rf.proba(X[i]))
    return meta_X


def train_stacking(X: np.ndarray, y: np.ndarray, folds: int = 5, seed: int = 0,
                   svm_params: Optional[dict] = None,
                   gb_params: Optional[dict] = None,
                   rf_params: Optional[dict] = None,
                   meta_params: Optional[dict] = None) -> StackingModel:
    """Out-of-fold stacking: base SVM/GB/RF scores collected fold by fold
    feed a random-forest meta-classifier; bases are then retrained on the
    full dataset for inference."""
    X, y = _check_matrix(X, y)
    svm_params = svm_params or {}
    gb_params = gb_params or {}
    rf_params = rf_params or {}
    meta_params = meta_params or {}
    ss = np.random.SeedSequence(seed)
    _, s_svm, s_gb, s_rf, s_meta = (int(s) for s in ss.generate_state(5))
    meta_X = stacking_meta_features(X, y, folds, seed, svm_params,
                                    gb_params, rf_params)
    meta = train_random_forest(meta_X, y, seed=s_meta, **meta_params)
    svm = train_svm(X, y, seed=s_svm, **svm_params)
    gb = train_gradient_boosting(X, y, seed=s_gb, **gb_params)
    rf = train_random_forest(X, y, seed=s_rf, **rf_params)
    return StackingModel(svm=svm, gb=gb, rf=rf, meta=meta, folds=folds)


Model = Union[LinearSvmModel, RandomForestModel, GradientBoostingModel,
              StackingModel]


def predict(model: Model, x: np.ndarray) -> tuple[int, float]:
    """(label, score) for any trained model; the score is monotone in the
    model's class-1 likelihood so it can feed the ranking metrics."""
    x = np.asarray(x, dtype=float)
    if isinstance(model, LinearSvmModel):
        return model.predict_label(x), model.score(x)
    if isinstance(model, GradientBoostingModel):
        return model.predict_label(x), model.raw_score(x)
    if isinstance(model, (RandomForestModel, StackingModel)):
        return model.predict_label(x), model.proba(x)
    raise InvalidParameterError(f"unknown model type {type(model).__name__}")
