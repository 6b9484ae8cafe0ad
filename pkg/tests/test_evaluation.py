import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linkbench.errors import (
    DegenerateLabelsError,
    GraphTooSmallError,
    InvalidParameterError,
    MalformedInputError,
    SamplingExhaustedError,
)
from linkbench.evaluation import (
    ScoredPair,
    aupr,
    auc_roc,
    classification_report,
    labeled_pairs,
    precision_at_k,
    roc_points,
    sample_negatives,
    score_pairs,
    score_pairs_parallel,
    split_edges,
    split_edges_temporal,
)
from linkbench.graph import build_graph
from linkbench.indices import adamic_adar, common_neighbor_centrality
from linkbench.synthgen import erdos_renyi

from conftest import oracle_auc, oracle_average_precision, trapezoid_area


def scored(values, labels):
    return [ScoredPair(i, i + 1, float(s), int(l))
            for i, (s, l) in enumerate(zip(values, labels))]


class TestSplitEdges:
    def test_deterministic(self):
        g = erdos_renyi(60, 0.2, seed=5)
        s1 = split_edges(g, (0.8, 0.1, 0.1), seed=3)
        s2 = split_edges(g, (0.8, 0.1, 0.1), seed=3)
        assert s1 == s2

    def test_partition_sizes_with_remainder_to_train(self):
        g = erdos_renyi(120, 0.15, seed=8)
        m = g.edge_count
        s = split_edges(g, (0.8, 0.1, 0.1), seed=1)
        assert len(s.test_pos) == int(0.1 * m)
        assert len(s.valid_pos) == int(0.1 * m)
        assert len(s.train_pos) == m - 2 * int(0.1 * m)

    def test_holdouts_absent_from_train_graph(self):
        g = erdos_renyi(80, 0.1, seed=2)
        s = split_edges(g, (0.7, 0.2, 0.1), seed=9)
        for u, v in s.test_pos + s.valid_pos:
            assert not s.train_graph.has_edge(u, v)

    def test_negatives_absent_from_original_graph_and_disjoint(self):
        g = erdos_renyi(80, 0.1, seed=2)
        s = split_edges(g, (0.8, 0.1, 0.1), seed=4)
        assert len(s.test_neg) == len(s.test_pos)
        assert len(s.valid_neg) == len(s.valid_pos)
        for u, v in s.test_neg + s.valid_neg:
            assert not g.has_edge(u, v)
        assert not set(s.test_neg) & set(s.valid_neg)

    def test_invalid_ratios(self):
        g = erdos_renyi(40, 0.2, seed=1)
        with pytest.raises(InvalidParameterError):
            split_edges(g, (0.5, 0.5, 0.5), seed=0)
        with pytest.raises(InvalidParameterError):
            split_edges(g, (1.0, 0.0, 0.0), seed=0)

    def test_too_small_graph(self):
        g = build_graph([(0, 1), (1, 2)], 3)
        with pytest.raises(GraphTooSmallError):
            split_edges(g, (0.8, 0.1, 0.1), seed=0)

    def test_node_set_preserved(self):
        g = erdos_renyi(50, 0.1, seed=3)
        s = split_edges(g, (0.8, 0.1, 0.1), seed=3)
        assert s.train_graph.node_count == g.node_count


class TestTemporalSplit:
    def test_earliest_edges_go_to_train(self):
        rows = [(i, i + 1, float(100 - i)) for i in range(20)]
        s = split_edges_temporal(rows, 21, (0.8, 0.1, 0.1), seed=0)
        # latest timestamps are the smallest i values here
        train_ts = [100 - u for u, v in s.train_pos]
        valid_ts = [100 - u for u, v in s.valid_pos]
        assert max(train_ts) <= min(valid_ts)

    def test_duplicate_keeps_earliest(self):
        rows = [(0, 1, 5.0), (1, 0, 1.0)] + [(i, i + 1, float(i + 10))
                                             for i in range(1, 12)]
        s = split_edges_temporal(rows, 13, (0.8, 0.1, 0.1), seed=0)
        assert (0, 1) in s.train_pos


class TestSampleNegatives:
    def test_complete_graph_exhausted(self):
        k5 = build_graph([(u, v) for u in range(5) for v in range(u + 1, 5)], 5)
        with pytest.raises(SamplingExhaustedError):
            sample_negatives(k5, 1, seed=0)

    def test_empty_graph_forced_outcome(self):
        g = build_graph([], 4)
        negs = sample_negatives(g, 6, seed=0)
        assert sorted(negs) == [(u, v) for u in range(4) for v in range(u + 1, 4)]

    def test_er_negatives_never_edges(self):
        g = erdos_renyi(100, 0.05, seed=7)
        negs = sample_negatives(g, 500, seed=1)
        assert len(negs) == len(set(negs)) == 500
        for u, v in negs:
            assert u < v
            assert not g.has_edge(u, v)

    def test_deterministic_and_respects_exclude(self):
        g = erdos_renyi(40, 0.1, seed=3)
        first = sample_negatives(g, 50, seed=9)
        assert first == sample_negatives(g, 50, seed=9)
        second = sample_negatives(g, 50, seed=9, exclude=first)
        assert not set(first) & set(second)


class TestScorePairs:
    def test_cnc_alpha_one_equals_cn_count(self):
        g = build_graph([(0, 1), (1, 2), (2, 0), (2, 3)], 4)
        pairs = [(0, 1, 1), (0, 3, 0), (1, 3, 0)]
        got = score_pairs(lambda gr, u, v: common_neighbor_centrality(gr, u, v, 1.0),
                          g, pairs)
        for sp, (u, v, _) in zip(got, pairs):
            assert sp.score == len(g.common_neighbors(u, v))

    def test_aai_elementwise(self):
        g = erdos_renyi(30, 0.2, seed=4)
        pairs = labeled_pairs([(0, 1), (2, 3)], [(4, 5), (6, 7)])
        got = score_pairs(adamic_adar, g, pairs)
        for sp, (u, v, label) in zip(got, pairs):
            assert sp.score == adamic_adar(g, u, v)
            assert sp.label == label

    def test_empty_input(self):
        g = build_graph([(0, 1)], 2)
        assert score_pairs(adamic_adar, g, []) == []

    def test_parallel_equals_serial(self):
        g = erdos_renyi(50, 0.15, seed=6)
        pairs = [(u, v, 0) for u in range(50) for v in range(u + 1, 50)]
        serial = score_pairs(adamic_adar, g, pairs)
        parallel = score_pairs_parallel(adamic_adar, g, pairs, processes=3)
        assert serial == parallel

    def test_nonfinite_score_rejected(self):
        with pytest.raises(MalformedInputError):
            ScoredPair(0, 1, float("nan"), 1)


class TestAucRoc:
    def test_perfect_separation(self):
        s = scored([5, 4, 3, 1, 0.5], [1, 1, 1, 0, 0])
        assert auc_roc(s) == 1.0

    def test_all_ties(self):
        s = scored([2, 2, 2, 2], [1, 0, 1, 0])
        assert auc_roc(s) == 0.5

    def test_single_class_rejected(self):
        with pytest.raises(DegenerateLabelsError):
            auc_roc(scored([1, 2], [1, 1]))

    def test_matches_pairwise_oracle(self):
        import numpy as np
        rng = np.random.default_rng(0)
        for trial in range(10):
            n = int(rng.integers(10, 200))
            values = rng.integers(0, 6, size=n).astype(float)  # tie-heavy
            labels = rng.integers(0, 2, size=n)
            if labels.sum() in (0, n):
                continue
            s = scored(values, labels)
            assert auc_roc(s) == pytest.approx(oracle_auc(s), abs=1e-12)

    def test_monotone_transform_invariance(self):
        vals = [0.1, 0.9, 0.4, 0.4, 0.7, 0.2]
        labels = [0, 1, 0, 1, 1, 0]
        a1 = auc_roc(scored(vals, labels))
        a2 = auc_roc(scored([v ** 3 + 10 for v in vals], labels))
        assert a1 == pytest.approx(a2, abs=1e-15)

    def test_negation_flips_auc_on_tie_free_input(self):
        vals = [0.11, 0.93, 0.41, 0.48, 0.77, 0.25]
        labels = [0, 1, 0, 1, 1, 0]
        a = auc_roc(scored(vals, labels))
        b = auc_roc(scored([-v for v in vals], labels))
        assert a + b == pytest.approx(1.0, abs=1e-12)


class TestPrecisionAtK:
    def test_all_positive_full_k(self):
        s = scored([3, 2, 1], [1, 1, 1])
        assert precision_at_k(s, 3) == 1.0

    def test_hand_ranked_list(self):
        vals = [10, 9, 8, 7, 6, 5, 4, 3, 2, 1]
        labels = [1, 0, 1, 1, 0, 0, 1, 0, 0, 1]
        s = scored(vals, labels)
        assert precision_at_k(s, 4) == 3 / 4
        assert precision_at_k(s, 1) == 1.0
        assert precision_at_k(s, 10) == 5 / 10

    def test_tie_break_is_ascending_pair(self):
        # equal scores: (0,1) ranks before (5,6)
        s = [ScoredPair(5, 6, 1.0, 1), ScoredPair(0, 1, 1.0, 0)]
        assert precision_at_k(s, 1) == 0.0

    def test_k_out_of_range(self):
        s = scored([1, 2], [0, 1])
        for k in (0, 3):
            with pytest.raises(InvalidParameterError):
                precision_at_k(s, k)


class TestAupr:
    def test_perfect_ranking(self):
        s = scored([9, 8, 7, 2, 1], [1, 1, 1, 0, 0])
        assert aupr(s) == 1.0

    def test_single_positive_ranked_last(self):
        n = 8
        vals = list(range(n, 0, -1))
        labels = [0] * (n - 1) + [1]
        assert aupr(scored(vals, labels)) == pytest.approx(1 / n)

    def test_no_positives_rejected(self):
        with pytest.raises(DegenerateLabelsError):
            aupr(scored([1, 2], [0, 0]))

    def test_matches_step_sum_oracle(self):
        import numpy as np
        rng = np.random.default_rng(5)
        vals = rng.random(100)
        labels = rng.integers(0, 2, size=100)
        s = scored(vals, labels)
        assert aupr(s) == pytest.approx(oracle_average_precision(s), abs=1e-12)


class TestRocPoints:
    def test_perfect_separation_three_points(self):
        s = scored([2, 2, 1, 1], [1, 1, 0, 0])
        assert roc_points(s) == [(0.0, 0.0), (0.0, 1.0), (1.0, 1.0)]

    def test_all_ties_diagonal(self):
        s = scored([3, 3, 3], [1, 0, 1])
        assert roc_points(s) == [(0.0, 0.0), (1.0, 1.0)]

    def test_monotone_staircase(self):
        import numpy as np
        rng = np.random.default_rng(1)
        s = scored(rng.integers(0, 5, 60).astype(float), rng.integers(0, 2, 60))
        pts = roc_points(s)
        assert pts[0] == (0.0, 0.0)
        assert pts[-1] == (1.0, 1.0)
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            assert x1 >= x0 and y1 >= y0

    def test_trapezoid_area_equals_auc(self):
        import numpy as np
        rng = np.random.default_rng(2)
        for _ in range(5):
            s = scored(rng.integers(0, 4, 80).astype(float),
                       rng.integers(0, 2, 80))
            assert trapezoid_area(roc_points(s)) == pytest.approx(
                auc_roc(s), abs=1e-12)


class TestClassificationReport:
    def test_perfect_predictions(self):
        r = classification_report([0, 1, 0, 1], [0, 1, 0, 1])
        assert r.accuracy == 1.0
        assert r.precision == (1.0, 1.0)
        assert r.recall == (1.0, 1.0)
        assert r.f1 == (1.0, 1.0)

    def test_all_predicted_one(self):
        r = classification_report([1, 1, 1, 1], [1, 1, 0, 0])
        assert r.precision[1] == 0.5
        assert r.recall[1] == 1.0
        assert r.recall[0] == 0.0
        assert r.precision[0] == 0.0  # 0/0 convention
        assert r.f1[0] == 0.0

    def test_accuracy_is_exact_fraction(self):
        pred = [0, 1, 1, 0, 1]
        act = [0, 0, 1, 0, 0]
        r = classification_report(pred, act)
        assert r.accuracy == 3 / 5
        assert r.support == (4, 1)

    def test_length_mismatch(self):
        with pytest.raises(MalformedInputError):
            classification_report([0, 1], [0])

    def test_report_dict_schema(self):
        r = classification_report([0, 1], [1, 1]).to_dict()
        assert set(r) == {"0-precision", "0-recall", "0-f1_score",
                          "1-precision", "1-recall", "1-f1_score",
                          "accuracy", "support"}


# grid-valued scores keep the affine transform strictly monotone in floats
@given(st.lists(st.tuples(st.integers(0, 1000).map(lambda i: i / 1000.0),
                          st.integers(0, 1)), min_size=4, max_size=60))
@settings(max_examples=60, deadline=None)
def test_rank_metric_invariance_property(items):
    labels = [l for _, l in items]
    if sum(labels) in (0, len(labels)):
        return
    s1 = scored([v for v, _ in items], labels)
    s2 = scored([2.0 * v + 1.0 for v, _ in items], labels)
    assert auc_roc(s1) == pytest.approx(auc_roc(s2), abs=1e-12)
    assert aupr(s1) == pytest.approx(aupr(s2), abs=1e-12)
    k = max(1, len(items) // 2)
    assert precision_at_k(s1, k) == precision_at_k(s2, k)
