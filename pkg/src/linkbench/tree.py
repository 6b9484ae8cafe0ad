"""CART-style binary decision trees, classification and regression.

Splits are greedy: classification minimizes weighted Gini impurity,
regression minimizes summed squared error.  Candidate thresholds are the
midpoints between consecutive distinct sorted feature values, evaluated
vectorized via prefix sums.  An optional per-split random feature subset
supports the forest.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import InvalidParameterError, MalformedInputError


@dataclass
class Leaf:
    # classification: (p_class0, p_class1); regression: (value, value) unused
    value: float  # regression prediction, or p_class1 for classification
    proba: tuple[float, float]

    def to_dict(self) -> dict:
        return {"leaf": True, "value": self.value, "proba": list(self.proba)}


@dataclass
class Split:
    feature: int
    threshold: float
    left: Union["Split", Leaf]
    right: Union["Split", Leaf]

    def to_dict(self) -> dict:
        return {"leaf": False, "feature": self.feature,
                "threshold": self.threshold,
                "left": self.left.to_dict(), "right": self.right.to_dict()}


def _node_from_dict(d: dict) -> Union[Split, Leaf]:
    if d["leaf"]:
        return Leaf(value=d["value"], proba=tuple(d["proba"]))
    return Split(feature=d["feature"], threshold=d["threshold"],
                 left=_node_from_dict(d["left"]),
                 right=_node_from_dict(d["right"]))


@dataclass
class DecisionTree:
    root: Union[Split, Leaf]
    mode: str  # "classification" | "regression"
    max_depth: int
    n_features: int

    def _leaf(self, x: np.ndarray) -> Leaf:
        node = self.root
        while isinstance(node, Split):
            node = node.left if x[node.feature] <= node.threshold else node.right
        return node

    def predict_value(self, x: np.ndarray) -> float:
        """Regression value, or class-1 probability in classification mode."""
        if len(x) != self.n_features:
            raise MalformedInputError(
                f"expected {self.n_features} features, got {len(x)}")
        return self._leaf(np.asarray(x, dtype=float)).value

    def predict_label(self, x: np.ndarray) -> int:
        leaf = self._leaf(np.asarray(np.atleast_1d(x), dtype=float))
        return 1 if leaf.proba[1] >= leaf.proba[0] else 0

    def predict_values(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        return np.array([self._leaf(row).value for row in X])

    def to_dict(self) -> dict:
        return {"mode": self.mode, "max_depth": self.max_depth,
                "n_features": self.n_features, "root": self.root.to_dict()}

    @classmethod
    def from_dict(cls, d: dict) -> "DecisionTree":
        return cls(root=_node_from_dict(d["root"]), mode=d["mode"],
                   max_depth=d["max_depth"], n_features=d["n_features"])


def _best_split_on_feature(x: np.ndarray, y: np.ndarray, mode: str,
                           min_leaf: int) -> Optional[tuple[float, float]]:
    """Best (impurity, threshold) for one feature column, or None."""
    order = np.argsort(x, kind="stable")
    xs, ys = x[order], y[order]
    n = len(xs)
    # split after position i (1-based count i on the left)
    counts = np.arange(1, n)
    valid = (xs[1:] != xs[:-1]) & (counts >= min_leaf) & (n - counts >= min_leaf)
    if not valid.any():
        return None
    if mode == "classification":
        pos_prefix = np.cumsum(ys)[:-1]
        nl, nr = counts, n - counts
        pl, pr = pos_prefix / nl, (pos_prefix[-1] + ys[-1] - pos_prefix) / nr
        gini = nl * 2 * pl * (1 - pl) + nr * 2 * pr * (1 - pr)
        impurity = gini
    else:
        s_prefix = np.cumsum(ys)[:-1]
        sq_prefix = np.cumsum(ys ** 2)[:-1]
        total_s = s_prefix[-1] + ys[-1]
        total_sq = sq_prefix[-1] + ys[-1] ** 2
        nl, nr = counts, n - counts
        sse_l = sq_prefix - s_prefix ** 2 / nl
        sse_r = (total_sq - sq_prefix) - (total_s - s_prefix) ** 2 / nr
        impurity = sse_l + sse_r
    impurity = np.where(valid, impurity, np.inf)
    best = int(np.argmin(impurity))
    threshold = (xs[best] + xs[best + 1]) / 2.0
    return float(impurity[best]), threshold


def _grow(X: np.ndarray, y: np.ndarray, depth: int, max_depth: int,
          min_leaf: int, feature_subset: Optional[int], mode: str,
          rng: np.random.Generator) -> Union[Split, Leaf]:
    n, m = X.shape

    def make_leaf() -> Leaf:
        if mode == "classification":
            p1 = float(np.mean(y))
            return Leaf(value=p1, proba=(1.0 - p1, p1))
        mean = float(np.mean(y))
        return Leaf(value=mean, proba=(0.0, 0.0))

    pure = np.all(y == y[0])
    if depth >= max_depth or n < 2 * min_leaf or pure:
        return make_leaf()
    if feature_subset is not None and feature_subset < m:
        features = sorted(rng.choice(m, size=feature_subset, replace=False))
    else:
        features = range(m)
    best = None  # (impurity, feature, threshold)
    for f in features:
        res = _best_split_on_feature(X[:, f], y, mode, min_leaf)
        if res is None:
            continue
        imp, thr = res
        if best is None or imp < best[0]:
            best = (imp, f, thr)
    if best is None:
        return make_leaf()
    _, f, thr = best
    mask = X[:, f] <= thr
    left = _grow(X[mask], y[mask], depth + 1, max_depth, min_leaf,
                 feature_subset, mode, rng)
    right = _grow(X[~mask], y[~mask], depth + 1, max_depth, min_leaf,
                  feature_subset, mode, rng)
    return Split(feature=int(f), threshold=thr, left=left, right=right)


def train_tree(X: np.ndarray, y: np.ndarray, max_depth: int = 8,
               min_leaf: int = 1, feature_subset: Optional[int] = None,
               seed: int = 0, mode: str = "classification") -> DecisionTree:
    """Grow a greedy binary tree on (X, y)."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2 or len(X) == 0 or len(X) != len(y):
        raise MalformedInputError(
            f"need a non-empty 2-d X aligned with y, got {X.shape} / {y.shape}")
    if mode not in ("classification", "regression"):
        raise InvalidParameterError(f"unknown mode {mode!r}")
    if max_depth < 1 or min_leaf < 1:
        raise InvalidParameterError("max_depth and min_leaf must be >= 1")
    if feature_subset is not None and not (1 <= feature_subset <= X.shape[1]):
        raise InvalidParameterError(
            f"feature_subset must be in [1, {X.shape[1]}], got {feature_subset}")
    rng = np.random.default_rng(seed)
    root = _grow(X, y, 0, max_depth, min_leaf, feature_subset, mode, rng)
    return DecisionTree(root=root, mode=mode, max_depth=max_depth,
                        n_features=X.shape[1])
