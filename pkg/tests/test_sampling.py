import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import toy_dataset
from gdof import oracle
from gdof.dataset import CATEGORICAL, NUMERICAL
from gdof.sampling import (
    SamplingDistribution,
    average_distance,
    average_distances,
    sample_negatives,
    sampling_distribution,
    softmax,
)


class TestAverageDistance:
    def test_numeric(self):
        ds = toy_dataset(np.array([0.0, 0.5, 1.0]))
        assert average_distance(ds, 0, 0) == pytest.approx(0.5)

    def test_constant(self):
        ds = toy_dataset(np.full(4, 0.3))
        assert all(average_distance(ds, i, 0) == 0.0 for i in range(4))

    def test_categorical(self):
        ds = toy_dataset(np.array([0, 0, 1]), kinds=[CATEGORICAL])
        assert average_distance(ds, 2, 0) == pytest.approx(2 / 3)

    def test_bad_index(self):
        with pytest.raises(IndexError):
            average_distance(toy_dataset(np.array([0.0, 1.0])), 2, 0)

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.floats(0, 1, allow_nan=False), min_size=1, max_size=20),
           st.lists(st.integers(0, 3), min_size=20, max_size=20))
    def test_vectorised_matches_literal(self, values, codes):
        n = len(values)
        ds = toy_dataset(np.array(values), np.array(codes[:n]), kinds=[NUMERICAL, CATEGORICAL])
        fast = average_distances(ds)
        for i in range(n):
            for k in range(2):
                assert fast[i, k] == pytest.approx(average_distance(ds, i, k), abs=1e-12)
                assert 0.0 <= fast[i, k] <= 1.0


class TestDistribution:
    def test_identical_candidates_uniform(self):
        ds = toy_dataset(np.full(5, 0.2))
        dist = sampling_distribution(ds, [0])
        np.testing.assert_array_equal(dist.candidate_indices, [1, 2, 3, 4])
        np.testing.assert_allclose(dist.probabilities, 0.25)

    def test_two_score_softmax(self):
        e = math.exp(0.5)
        np.testing.assert_allclose(softmax(np.array([0.9, 0.4])), [e / (e + 1), 1 / (e + 1)])
        np.testing.assert_allclose(softmax(np.array([0.9, 0.4])), [0.6225, 0.3775], atol=5e-5)

    def test_matches_brute_force(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            ds, pos, *_ = oracle.random_instance(rng)
            cand, probs = oracle.sampling_probabilities(ds, pos)
            dist = sampling_distribution(ds, pos)
            np.testing.assert_array_equal(dist.candidate_indices, cand)
            np.testing.assert_allclose(dist.probabilities, probs, rtol=0, atol=1e-12)

    def test_empty_pool(self):
        with pytest.raises(ValueError):
            sampling_distribution(toy_dataset(np.array([0.0, 1.0])), [0, 1])

    def test_invalid_probabilities(self):
        with pytest.raises(ValueError):
            SamplingDistribution(np.array([0, 1]), np.array([0.7, 0.7]))

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.floats(0, 1, allow_nan=False), min_size=3, max_size=20))
    def test_central_objects_more_likely(self, values):
        ds = toy_dataset(np.array(values))
        dist = sampling_distribution(ds, [0])
        centrality = 1.0 - average_distances(ds)[dist.candidate_indices, 0]
        p = dist.probabilities
        assert p.sum() == pytest.approx(1.0, abs=1e-9)
        for a in range(p.size):
            for b in range(p.size):
                if centrality[a] > centrality[b] + 1e-12:
                    assert p[a] > p[b]
        assert not np.isin(dist.candidate_indices, [0]).any()


class TestSampleNegatives:
    dist = SamplingDistribution(np.array([2, 5, 9]), np.array([0.5, 0.3, 0.2]))

    def test_exhaustion(self):
        np.testing.assert_array_equal(sample_negatives(self.dist, 3, 0), [2, 5, 9])
        np.testing.assert_array_equal(sample_negatives(self.dist, 10, 0), [2, 5, 9])

    def test_degenerate(self):
        dist = SamplingDistribution(np.array([4, 6]), np.array([1.0, 0.0]))
        assert all(sample_negatives(dist, 1, s).tolist() == [4] for s in range(20))

    def test_deterministic(self):
        a = sample_negatives(self.dist, 2, seed=42)
        np.testing.assert_array_equal(a, sample_negatives(self.dist, 2, seed=42))
        assert len(set(a.tolist())) == 2

    def test_bad_count(self):
        with pytest.raises(ValueError):
            sample_negatives(self.dist, 0, 0)

    def test_empirical_frequencies(self):
        draws = np.array([sample_negatives(self.dist, 1, seed)[0] for seed in range(10_000)])
        freq = np.array([(draws == c).mean() for c in self.dist.candidate_indices])
        np.testing.assert_allclose(freq, self.dist.probabilities, atol=0.02)
