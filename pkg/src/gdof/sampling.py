"""Negative sampling: pick likely inliers from the unlabeled pool.

Objects closer on average to the rest of the data are more central and are
drawn with higher probability (softmax of one minus the mean per-attribute
average distance).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gdof.dataset import Dataset


@dataclass(frozen=True)
class SamplingDistribution:
    candidate_indices: np.ndarray
    probabilities: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=np.float64)
        idx = np.asarray(self.candidate_indices, dtype=np.int64)
        if p.shape != idx.shape:
            raise ValueError("one probability per candidate required")
        if idx.size == 0:
            raise ValueError("empty candidate pool")
        if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-9:
            raise ValueError("probabilities must be non-negative and sum to 1")
        object.__setattr__(self, "candidate_indices", idx)
        object.__setattr__(self, "probabilities", p)


def _column_average_distances(values: np.ndarray, numerical: bool) -> np.ndarray:
    """Mean distance of every object to all objects on one attribute."""
    n = len(values)
    uniq, inverse, counts = np.unique(values, return_inverse=True, return_counts=True)
    if not numerical:
        # mismatch indicator: the share of objects carrying another code
        return 1.0 - counts[inverse] / n
    # sum_j |v - f_j| over sorted unique values via prefix sums
    weighted = uniq * counts
    below_count = np.cumsum(counts) - counts
    below_sum = np.cumsum(weighted) - weighted
    above_count = n - below_count - counts
    above_sum = weighted.sum() - below_sum - weighted
    total = (uniq * below_count - below_sum) + (above_sum - uniq * above_count)
    return np.clip(total[inverse] / n, 0.0, 1.0)


def average_distances(dataset: Dataset) -> np.ndarray:
    """(n, m) matrix of per-attribute average distances."""
    return np.column_stack([
        _column_average_distances(col, attr.is_numerical)
        for col, attr in zip(dataset.columns, dataset.schema)
    ])


def average_distance(dataset: Dataset, i: int, k: int) -> float:
    """Average distance of object ``i`` to all objects on attribute ``k``."""
    n = dataset.n_objects
    if not 0 <= i < n:
        raise IndexError(f"object index {i} out of range")
    if not 0 <= k < dataset.n_attributes:
        raise IndexError(f"attribute index {k} out of range")
    col = dataset.columns[k]
    if dataset.schema[k].is_numerical:
        d = np.abs(col - col[i])
    else:
        d = (col != col[i]).astype(np.float64)
    return float(d.sum() / n)


def softmax(scores: np.ndarray) -> np.ndarray:
    z = np.exp(scores - scores.max())
    return z / z.sum()


def sampling_distribution(dataset: Dataset, positives) -> SamplingDistribution:
    """Softmax sampling weights over the unlabeled objects ``X - X+``."""
    positives = np.asarray(positives, dtype=np.int64)
    candidates = np.setdiff1d(np.arange(dataset.n_objects), positives)
    if candidates.size == 0:
        raise ValueError("no unlabeled objects left to sample from")
    centrality = 1.0 - average_distances(dataset).mean(axis=1)
    return SamplingDistribution(candidates, softmax(centrality[candidates]))


def sample_negatives(dist: SamplingDistribution, count: int, seed: int) -> np.ndarray:
    """Weighted draw of ``count`` distinct candidates; sorted object indices."""
    if count < 1:
        raise ValueError("count must be at least 1")
    if count >= dist.candidate_indices.size:
        return dist.candidate_indices.copy()
    rng = np.random.default_rng(seed)
    # Generator.choice without replacement keeps the first occurrences of
    # repeated weighted draws, i.e. sequential sampling with renormalization.
    picked = rng.choice(dist.candidate_indices.size, size=count, replace=False,
                        p=dist.probabilities)
    return np.sort(dist.candidate_indices[picked])
