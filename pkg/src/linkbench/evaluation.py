"""Edge splitting, negative sampling, batch scoring, and ranking metrics.

Every ranking metric orders candidates by descending score with ties broken
by ascending (u, v), so tie-heavy index scores still evaluate
deterministically.  Splitting and sampling are fully determined by
(graph, ratios, seed).
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .errors import (
    DegenerateLabelsError,
    GraphTooSmallError,
    InvalidParameterError,
    MalformedInputError,
    SamplingExhaustedError,
)
from .graph import Edge, Graph, build_graph

ScoreFn = Callable[[Graph, int, int], float]

MIN_SPLIT_EDGES = 10


@dataclass(frozen=True)
class ScoredPair:
    u: int
    v: int
    score: float
    label: int  # 1 = true link, 0 = non-link

    def __post_init__(self):
        if not np.isfinite(self.score):
            raise MalformedInputError(
                f"non-finite score {self.score} for pair ({self.u}, {self.v})")


@dataclass(frozen=True)
class EdgeSplit:
    train_graph: Graph
    train_pos: tuple[Edge, ...]
    test_pos: tuple[Edge, ...]
    valid_pos: tuple[Edge, ...]
    test_neg: tuple[Edge, ...]
    valid_neg: tuple[Edge, ...]
    seed: int
    ratios: tuple[float, float, float]


@dataclass(frozen=True)
class ClassificationReport:
    """Per-class precision/recall/F1 plus accuracy, shaped like a two-class
    classification summary table."""

    precision: tuple[float, float]  # (class 0, class 1)
    recall: tuple[float, float]
    f1: tuple[float, float]
    support: tuple[int, int]
    accuracy: float

    def to_dict(self) -> dict:
        return {
            "0-precision": self.precision[0], "0-recall": self.recall[0],
            "0-f1_score": self.f1[0],
            "1-precision": self.precision[1], "1-recall": self.recall[1],
            "1-f1_score": self.f1[1],
            "accuracy": self.accuracy,
            "support": {"0": self.support[0], "1": self.support[1]},
        }


def _norm_pair(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _check_ratios(ratios: Sequence[float]) -> tuple[float, float, float]:
    if len(ratios) != 3 or any(r <= 0 for r in ratios):
        raise InvalidParameterError(f"need three positive ratios, got {ratios}")
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise InvalidParameterError(f"ratios must sum to 1, got {sum(ratios)}")
    return tuple(ratios)  # type: ignore[return-value]


def sample_negatives(g: Graph, count: int, seed: int,
                     exclude: Iterable[Edge] = ()) -> list[Edge]:
    """Uniformly sample `count` distinct non-adjacent pairs of g.

    Pairs are normalized (u < v), never in E(g) nor in `exclude`, and fully
    determined by `seed`.  Rejection sampling when the non-edge pool is
    ample; exhaustive enumeration plus a seeded shuffle otherwise.
    """
    if count < 0:
        raise InvalidParameterError(f"count must be >= 0, got {count}")
    n = g.node_count
    excluded = {_norm_pair(*e) for e in exclude}
    excluded = {e for e in excluded if not g.has_edge(*e)}
    total_pairs = n * (n - 1) // 2
    pool = total_pairs - g.edge_count - len(excluded)
    if count > pool:
        raise SamplingExhaustedError(
            f"requested {count} negatives but only {pool} non-edges available")
    rng = np.random.default_rng(seed)
    if count * 3 >= pool:
        candidates = [(u, v) for u in range(n) for v in range(u + 1, n)
                      if not g.has_edge(u, v) and (u, v) not in excluded]
        order = rng.permutation(len(candidates))
        return [candidates[i] for i in order[:count]]
    chosen: list[Edge] = []
    seen: set[Edge] = set()
    while len(chosen) < count:
        draws = rng.integers(0, n, size=(max(4 * (count - len(chosen)), 64), 2))
        for u, v in draws:
            if u == v:
                continue
            e = _norm_pair(int(u), int(v))
            if e in seen or e in excluded or g.has_edge(*e):
                continue
            seen.add(e)
            chosen.append(e)
            if len(chosen) == count:
                break
    return chosen


def split_edges(g: Graph, ratios: Sequence[float], seed: int,
                negative_ratio: float = 1.0) -> EdgeSplit:
    """Shuffle edges with a seeded PCG64 and partition into train/test/valid.

    Remainder edges go to train.  The train graph keeps the full node set, so
    nodes isolated by edge removal remain addressable.  Negatives are sampled
    per evaluation set at `negative_ratio` times the positives, excluded from
    the ORIGINAL edge set and from each other.
    """
    ratios = _check_ratios(ratios)
    if negative_ratio <= 0:
        raise InvalidParameterError(
            f"negative_ratio must be > 0, got {negative_ratio}")
    edges = g.edges()
    if len(edges) < MIN_SPLIT_EDGES:
        raise GraphTooSmallError(
            f"need at least {MIN_SPLIT_EDGES} edges to split, got {len(edges)}")
    ss = np.random.SeedSequence(seed)
    s_shuffle, s_test, s_valid = (int(x) for x in ss.generate_state(3))
    order = np.random.default_rng(s_shuffle).permutation(len(edges))
    n_test = int(ratios[1] * len(edges))
    n_valid = int(ratios[2] * len(edges))
    test_pos = tuple(edges[i] for i in order[:n_test])
    valid_pos = tuple(edges[i] for i in order[n_test:n_test + n_valid])
    train_pos = tuple(edges[i] for i in order[n_test + n_valid:])
    train_graph = build_graph(train_pos, g.node_count)
    test_neg = tuple(sample_negatives(
        g, round(negative_ratio * len(test_pos)), s_test))
    valid_neg = tuple(sample_negatives(
        g, round(negative_ratio * len(valid_pos)), s_valid, exclude=test_neg))
    return EdgeSplit(train_graph, train_pos, test_pos, valid_pos,
                     test_neg, valid_neg, seed, ratios)


def split_edges_temporal(edge_rows: Sequence[tuple[int, int, float]],
                         node_count: int, ratios: Sequence[float], seed: int,
                         negative_ratio: float = 1.0) -> EdgeSplit:
    """Chronological split: earliest edges train, latest validate.

    Duplicate edges keep their earliest timestamp.  Negatives are still
    sampled by seed (timestamps say nothing about non-edges).
    """
    ratios = _check_ratios(ratios)
    earliest: dict[Edge, float] = {}
    for u, v, ts in edge_rows:
        e = _norm_pair(u, v)
        if e not in earliest or ts < earliest[e]:
            earliest[e] = ts
    edges = sorted(earliest, key=lambda e: (earliest[e], e))
    if len(edges) < MIN_SPLIT_EDGES:
        raise GraphTooSmallError(
            f"need at least {MIN_SPLIT_EDGES} edges to split, got {len(edges)}")
    g = build_graph(edges, node_count)
    n_test = int(ratios[1] * len(edges))
    n_valid = int(ratios[2] * len(edges))
    n_train = len(edges) - n_test - n_valid
    train_pos = tuple(edges[:n_train])
    test_pos = tuple(edges[n_train:n_train + n_test])
    valid_pos = tuple(edges[n_train + n_test:])
    ss = np.random.SeedSequence(seed)
    _, s_test, s_valid = (int(x) for x in ss.generate_state(3))
    train_graph = build_graph(train_pos, node_count)
    test_neg = tuple(sample_negatives(
        g, round(negative_ratio * len(test_pos)), s_test))
    valid_neg = tuple(sample_negatives(
        g, round(negative_ratio * len(valid_pos)), s_valid, exclude=test_neg))
    return EdgeSplit(train_graph, train_pos, test_pos, valid_pos,
                     test_neg, valid_neg, seed, ratios)


def labeled_pairs(positives: Iterable[Edge],
                  negatives: Iterable[Edge]) -> list[tuple[int, int, int]]:
    """Concatenate positives (label 1) and negatives (label 0)."""
    return [(u, v, 1) for u, v in positives] + [(u, v, 0) for u, v in negatives]


def score_pairs(score_fn: ScoreFn, g: Graph,
                pairs: Sequence[tuple[int, int, int]]) -> list[ScoredPair]:
    """Score labeled pairs against g, preserving input order."""
    return [ScoredPair(u, v, float(score_fn(g, u, v)), label)
            for u, v, label in pairs]


_worker_state: dict = {}


def _init_scoring_worker(score_fn: ScoreFn, g: Graph) -> None:
    _worker_state["fn"] = score_fn
    _worker_state["g"] = g


def _score_chunk(chunk: Sequence[tuple[int, int, int]]) -> list[float]:
    fn, g = _worker_state["fn"], _worker_state["g"]
    return [float(fn(g, u, v)) for u, v, _ in chunk]


def score_pairs_parallel(score_fn: ScoreFn, g: Graph,
                         pairs: Sequence[tuple[int, int, int]],
                         processes: int = 4) -> list[ScoredPair]:
    """Parallel map of score_fn over pairs; identical output to score_pairs.

    Uses fork-based worker processes sharing the immutable graph; falls back
    to the serial path when fork is unavailable or a single process is asked
    for.
    """
    if processes <= 1 or "fork" not in multiprocessing.get_all_start_methods():
        return score_pairs(score_fn, g, pairs)
    ctx = multiprocessing.get_context("fork")
    chunks = [pairs[i::processes * 4] for i in range(processes * 4)]
    with ctx.Pool(processes, initializer=_init_scoring_worker,
                  initargs=(score_fn, g)) as pool:
        chunk_scores = pool.map(_score_chunk, chunks)
    scores: list[float] = [0.0] * len(pairs)
    for ci, chunk in enumerate(chunk_scores):
        for j, s in enumerate(chunk):
            scores[ci + j * processes * 4] = s
    return [ScoredPair(u, v, scores[i], label)
            for i, (u, v, label) in enumerate(pairs)]


def _require_both_classes(scored: Sequence[ScoredPair]) -> tuple[int, int]:
    pos = sum(1 for s in scored if s.label == 1)
    neg = len(scored) - pos
    if pos == 0 or neg == 0:
        raise DegenerateLabelsError(
            f"need both classes, got {pos} positives / {neg} negatives")
    return pos, neg


def _ranked(scored: Sequence[ScoredPair]) -> list[ScoredPair]:
    # Descending score, ties broken by ascending (u, v).
    return sorted(scored, key=lambda s: (-s.score, s.u, s.v))


def auc_roc(scored: Sequence[ScoredPair]) -> float:
    """Probability a random positive outranks a random negative; ties 0.5.

    Computed via the Mann-Whitney U normalization with midranks, which is
    exact in double precision for desk-scale inputs.
    """
    pos, neg = _require_both_classes(scored)
    by_score = sorted(scored, key=lambda s: s.score)
    rank_sum_pos = 0.0
    i = 0
    while i < len(by_score):
        j = i
        while j < len(by_score) and by_score[j].score == by_score[i].score:
            j += 1
        midrank = (i + 1 + j) / 2.0  # average of 1-based ranks i+1..j
        rank_sum_pos += midrank * sum(1 for s in by_score[i:j] if s.label == 1)
        i = j
    u_stat = rank_sum_pos - pos * (pos + 1) / 2.0
    return u_stat / (pos * neg)


def precision_at_k(scored: Sequence[ScoredPair], k: int) -> float:
    """Fraction of the k highest-ranked pairs whose label is 1."""
    if not (1 <= k <= len(scored)):
        raise InvalidParameterError(
            f"k must be in [1, {len(scored)}], got {k}")
    top = _ranked(scored)[:k]
    return sum(s.label for s in top) / k


def aupr(scored: Sequence[ScoredPair]) -> float:
    """Average precision: mean of precision at each positive's rank."""
    pos = sum(1 for s in scored if s.label == 1)
    if pos == 0:
        raise DegenerateLabelsError("average precision needs at least one positive")
    hits = 0
    total = 0.0
    for rank, s in enumerate(_ranked(scored), start=1):
        if s.label == 1:
            hits += 1
            total += hits / rank
    return total / pos


def roc_points(scored: Sequence[ScoredPair]) -> list[tuple[float, float]]:
    """ROC staircase from (0,0) to (1,1), one point per distinct threshold."""
    pos, neg = _require_both_classes(scored)
    by_score = sorted(scored, key=lambda s: -s.score)
    points = [(0.0, 0.0)]
    tp = fp = 0
    i = 0
    while i < len(by_score):
        j = i
        while j < len(by_score) and by_score[j].score == by_score[i].score:
            j += 1
        for s in by_score[i:j]:
            if s.label == 1:
                tp += 1
            else:
                fp += 1
        points.append((fp / neg, tp / pos))
        i = j
    return points


def classification_report(predicted: Sequence[int],
                          actual: Sequence[int]) -> ClassificationReport:
    """Two-class precision/recall/F1 report with the 0/0 -> 0 convention."""
    if len(predicted) != len(actual):
        raise MalformedInputError(
            f"length mismatch: {len(predicted)} predictions vs {len(actual)} labels")
    if not predicted:
        raise MalformedInputError("empty inputs")
    precisions, recalls, f1s, supports = [], [], [], []
    correct = sum(1 for p, a in zip(predicted, actual) if p == a)
    for cls in (0, 1):
        tp = sum(1 for p, a in zip(predicted, actual) if p == cls and a == cls)
        pred_cls = sum(1 for p in predicted if p == cls)
        act_cls = sum(1 for a in actual if a == cls)
        prec = tp / pred_cls if pred_cls else 0.0
        rec = tp / act_cls if act_cls else 0.0
        f1 = 2 * prec * rec / (prec + rec) if (prec + rec) else 0.0
        precisions.append(prec)
        recalls.append(rec)
        f1s.append(f1)
        supports.append(act_cls)
    return ClassificationReport(
        precision=(precisions[0], precisions[1]),
        recall=(recalls[0], recalls[1]),
        f1=(f1s[0], f1s[1]),
        support=(supports[0], supports[1]),
        accuracy=correct / len(actual),
    )
