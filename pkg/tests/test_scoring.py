import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import toy_dataset
from gdof import oracle
from gdof.dataset import Dataset, normalize
from gdof.density import DensityMatrix
from gdof.scoring import (
    DetectConfig,
    attribute_relevance,
    compute_threshold,
    detect,
    gdof_score,
    gdof_scores,
    relevance_vector,
)

CHAIN = DensityMatrix(np.array([[1.9 / 3], [1.9 / 3], [1 / 3]]), np.array([0.2]))


class TestRelevance:
    def test_example(self):
        assert attribute_relevance(CHAIN, [2], [0], 0) == pytest.approx(0.3)

    def test_equal_means(self):
        dm = DensityMatrix(np.array([[0.2], [0.4], [0.3], [0.3]]), np.zeros(1))
        assert attribute_relevance(dm, [0, 1], [2, 3], 0) == pytest.approx(0.0)

    def test_constant_attribute(self):
        dm = DensityMatrix(np.ones((4, 2)), np.zeros(2))
        np.testing.assert_array_equal(relevance_vector(dm, [0], [1, 2]), 0.0)

    def test_negative_kept(self):
        assert attribute_relevance(CHAIN, [0], [2], 0) == pytest.approx(-0.3)

    @pytest.mark.parametrize("pos,neg", [([], [0]), ([0], []), ([0], [0])])
    def test_errors(self, pos, neg):
        with pytest.raises(ValueError):
            relevance_vector(CHAIN, pos, neg)


class TestScores:
    def test_example_chain(self):
        gamma = relevance_vector(CHAIN, [2], [0])
        assert gdof_score(CHAIN, gamma, 2) == pytest.approx(0.9)
        assert gdof_score(CHAIN, gamma, 0) == pytest.approx(0.81)

    def test_zero_relevance(self):
        np.testing.assert_array_equal(gdof_scores(CHAIN, [0.0]), 1.0)

    def test_threshold(self):
        scores = np.array([0.81, 0.81, 0.9])
        assert compute_threshold(scores, [2], [0]) == pytest.approx(0.855)
        assert compute_threshold(np.array([0.4, 0.4]), [0], [1]) == 0.4
        # overlapping classes still give the midpoint
        assert compute_threshold(np.array([0.2, 0.8]), [0], [1]) == pytest.approx(0.5)

    def test_threshold_needs_labels(self):
        with pytest.raises(ValueError):
            compute_threshold(np.array([0.1]), [], [0])


class TestDetect:
    def test_toy_end_to_end(self):
        ds = toy_dataset(np.array([0.0, 0.05, 0.1, 0.9]), ground_truth=[0, 0, 0, 1])
        report = detect(ds, [3], DetectConfig(n_negatives=3, grid=(0.1, 0.5, 1.0)))
        np.testing.assert_array_equal(report.outlier_set, [3])
        np.testing.assert_array_equal(report.negatives, [0, 1, 2])
        assert report.radii[0] == 0.1
        ref = oracle.detect(ds, [3], 3, [0.1, 0.5, 1.0], 0)
        np.testing.assert_allclose(report.scores, ref.scores, rtol=0, atol=1e-12)

    def test_separable_instance_flags_all_labeled(self):
        rng = np.random.default_rng(0)
        inliers = 0.4 + 0.05 * rng.random((60, 2))
        outliers = np.array([[0.0, 1.0], [1.0, 0.0], [0.95, 0.98]])
        data = np.vstack([inliers, outliers])
        gt = np.r_[np.zeros(60, bool), np.ones(3, bool)]
        ds = normalize(Dataset.from_arrays(data, ground_truth=gt))
        report = detect(ds, [60, 61, 62], DetectConfig(n_negatives=20, seed=3))
        assert report.scores[60:].min() > report.scores[report.negatives].max()
        assert set(range(60, 63)) <= set(report.outlier_set.tolist())

    def test_deterministic(self):
        rng = np.random.default_rng(1)
        ds, pos, n_neg, grid, seed = oracle.random_instance(rng)
        cfg = DetectConfig(n_negatives=n_neg, grid=tuple(grid), seed=seed)
        a, b = detect(ds, pos, cfg), detect(ds, pos, cfg)
        assert json.dumps(a.to_dict()) == json.dumps(b.to_dict())

    def test_requires_normalized(self):
        ds = Dataset.from_arrays([[1.0], [5.0]], ground_truth=[0, 1])
        with pytest.raises(ValueError, match="normalized"):
            detect(ds, [1])

    def test_requires_positive_labels(self):
        with pytest.raises(ValueError):
            detect(toy_dataset(np.array([0.0, 1.0])), [])

    def test_rejects_inlier_as_positive(self):
        with pytest.raises(ValueError):
            detect(toy_dataset(np.array([0.0, 1.0]), ground_truth=[0, 1]), [0])

    def test_config_validation(self):
        with pytest.raises(ValueError):
            DetectConfig(n_negatives=0)
        with pytest.raises(ValueError):
            DetectConfig(grid_step=0.0)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_outlier_set_is_strict_superlevel_set(self, seed):
        ds, pos, n_neg, grid, run_seed = oracle.random_instance(np.random.default_rng(seed))
        report = detect(ds, pos, DetectConfig(n_negatives=n_neg, grid=tuple(grid), seed=run_seed))
        np.testing.assert_array_equal(report.outlier_set,
                                      np.flatnonzero(report.scores > report.threshold))
        assert np.all(np.isfinite(report.scores))
        assert not np.intersect1d(report.positives, report.negatives).size

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_permutation_equivariance(self, seed):
        rng = np.random.default_rng(seed)
        ds, pos, _, grid, _ = oracle.random_instance(rng)
        perm = rng.permutation(ds.n_objects)
        inverse = np.argsort(perm)
        cfg = DetectConfig(n_negatives=ds.n_objects, grid=tuple(grid))
        base = detect(ds, pos, cfg)
        moved = detect(ds.take(perm), inverse[pos], cfg)
        np.testing.assert_allclose(base.scores[perm], moved.scores, rtol=0, atol=1e-12)

    def test_report_files(self, tmp_path):
        ds = toy_dataset(np.array([0.0, 0.05, 0.1, 0.9]), ground_truth=[0, 0, 0, 1])
        report = detect(ds, [3], DetectConfig(n_negatives=3, grid=(0.1, 0.5, 1.0)))
        report.write_csv(tmp_path / "s.csv")
        lines = (tmp_path / "s.csv").read_text().splitlines()
        assert lines[0] == "index,score,predicted_outlier"
        assert len(lines) == 5 and lines[4].endswith(",1")
        report.write_json(tmp_path / "s.json")
        payload = json.loads((tmp_path / "s.json").read_text())
        assert payload["outlier_set"] == [3]
        assert payload["config"]["labeled_outliers"] == 1
        assert len(payload["scores"]) == 4
