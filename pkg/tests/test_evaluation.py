import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hgaclust.errors import ContractError
from hgaclust.evaluation import (
    ConfusionMatrix,
    align_clusters_to_labels,
    confusion_matrix,
    metrics,
    round_percent,
)

# the published two-cluster result this eval path must reproduce
REFERENCE_CM = ConfusionMatrix(tp=158, tn=127, fp=11, fn=7)


class TestAlign:
    def test_already_aligned(self):
        labels = np.array([0, 1, 1, 0, 1])
        mapped = align_clusters_to_labels(labels.copy(), labels)
        assert np.array_equal(mapped, labels)

    def test_complemented_assignment_flipped(self):
        labels = np.array([0, 1, 1, 0, 1])
        mapped = align_clusters_to_labels(1 - labels, labels)
        assert np.array_equal(mapped, labels)

    def test_majority_wins(self):
        # identity agrees on 3 of 4, flip only on 1
        mapped = align_clusters_to_labels(np.array([0, 0, 1, 1]), np.array([0, 1, 1, 1]))
        assert mapped.tolist() == [0, 0, 1, 1]

    def test_exact_tie_keeps_identity(self):
        mapped = align_clusters_to_labels(np.array([0, 1]), np.array([1, 1]))
        assert mapped.tolist() == [0, 1]

    def test_length_mismatch(self):
        with pytest.raises(ContractError):
            align_clusters_to_labels(np.array([0, 1]), np.array([0, 1, 1]))

    @given(st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1)), min_size=1, max_size=40))
    def test_alignment_accuracy_at_least_half(self, pairs):
        assignment = np.array([a for a, _ in pairs])
        labels = np.array([b for _, b in pairs])
        mapped = align_clusters_to_labels(assignment, labels)
        assert (mapped == labels).sum() * 2 >= len(pairs)


class TestConfusionMatrix:
    def test_perfect_split_of_fixture_labels(self, prepared):
        *_, labels, _ = prepared
        cm = confusion_matrix(labels.copy(), labels)
        assert (cm.tp, cm.tn, cm.fp, cm.fn) == (165, 138, 0, 0)

    def test_reference_counts(self):
        labels = np.array([1] * 165 + [0] * 138)
        predicted = np.array([1] * 158 + [0] * 7 + [0] * 127 + [1] * 11)
        cm = confusion_matrix(predicted, labels)
        assert cm == REFERENCE_CM
        assert cm.n == 303

    def test_constant_positive_predictor(self):
        cm = confusion_matrix(np.array([1, 1, 1, 1]), np.array([1, 1, 0, 0]))
        assert (cm.tp, cm.fp, cm.tn, cm.fn) == (2, 2, 0, 0)

    @given(st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1)), min_size=1, max_size=40))
    def test_counts_partition_n(self, pairs):
        predicted = np.array([a for a, _ in pairs])
        labels = np.array([b for _, b in pairs])
        cm = confusion_matrix(predicted, labels)
        assert cm.n == len(pairs)
        assert min(cm.tp, cm.tn, cm.fp, cm.fn) >= 0

    @given(
        st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1)), min_size=2, max_size=40),
        st.randoms(use_true_random=False),
    )
    def test_metrics_invariant_under_joint_permutation(self, pairs, rnd):
        predicted = [a for a, _ in pairs]
        labels = [b for _, b in pairs]
        order = list(range(len(pairs)))
        rnd.shuffle(order)
        base = metrics(confusion_matrix(np.array(predicted), np.array(labels)))
        perm = metrics(
            confusion_matrix(
                np.array([predicted[i] for i in order]), np.array([labels[i] for i in order])
            )
        )
        assert base == perm


class TestMetrics:
    def test_reference_values(self):
        m = metrics(REFERENCE_CM)
        assert m.accuracy == pytest.approx(285 / 303 * 100, abs=1e-12)
        assert m.error == pytest.approx(18 / 303 * 100, abs=1e-12)
        assert m.recall == pytest.approx(158 / 165 * 100, abs=1e-12)
        assert m.precision == pytest.approx(158 / 169 * 100, abs=1e-12)
        recall, precision = 158 / 165 * 100, 158 / 169 * 100
        assert m.f1 == pytest.approx(2 * recall * precision / (recall + precision), abs=1e-12)

    def test_reference_display_rounding(self):
        rounded = metrics(REFERENCE_CM).rounded()
        assert rounded == {
            "accuracy": 94.06,
            "error": 5.94,
            "recall": 95.76,
            "precision": 93.49,
            "f1": 94.61,
        }

    def test_perfect_clustering(self):
        m = metrics(ConfusionMatrix(tp=165, tn=138, fp=0, fn=0))
        assert (m.accuracy, m.recall, m.precision, m.f1) == (100.0, 100.0, 100.0, 100.0)
        assert m.error == 0.0

    def test_zero_denominators(self):
        m = metrics(ConfusionMatrix(tp=0, tn=3, fp=0, fn=2))
        assert m.recall == 0.0
        assert m.precision == 0.0
        assert m.f1 == 0.0

    def test_empty_matrix_rejected(self):
        with pytest.raises(ContractError):
            metrics(ConfusionMatrix(0, 0, 0, 0))

    @given(
        st.integers(0, 500), st.integers(0, 500), st.integers(0, 500), st.integers(0, 500)
    )
    def test_accuracy_plus_error_is_hundred(self, tp, tn, fp, fn):
        if tp + tn + fp + fn == 0:
            return
        m = metrics(ConfusionMatrix(tp, tn, fp, fn))
        assert m.accuracy + m.error == pytest.approx(100.0, abs=1e-9)
        for value in (m.accuracy, m.error, m.recall, m.precision, m.f1):
            assert 0.0 <= value <= 100.0


class TestRounding:
    def test_half_rounds_away_from_zero(self):
        assert round_percent(94.065) == 94.07
        assert round_percent(5.945) == 5.95
        assert round_percent(94.064) == 94.06

    def test_plain_values_unchanged(self):
        assert round_percent(50.0) == 50.0
        assert round_percent(93.49) == 93.49
