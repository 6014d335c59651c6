"""Ranking metrics for outlier scores (higher score = more anomalous)."""

import numpy as np


def _validate(scores, labels):
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels).astype(bool)
    if scores.shape != labels.shape or scores.ndim != 1:
        raise ValueError("scores and labels must be 1-D and of equal length")
    if labels.all() or not labels.any():
        raise ValueError("both classes must be present")
    return scores, labels


def auc(scores, labels) -> float:
    """Area under the ROC curve in its Mann-Whitney form.

    The probability that a random positive outscores a random negative, with
    ties counted as one half. Computed from average ranks in O(n log n).
    """
    scores, labels = _validate(scores, labels)
    _, inverse, counts = np.unique(scores, return_inverse=True, return_counts=True)
    upper = np.cumsum(counts)
    avg_rank = upper - (counts - 1) / 2.0
    ranks = avg_rank[inverse]
    n_pos = labels.sum()
    n_neg = labels.size - n_pos
    u_stat = ranks[labels].sum() - n_pos * (n_pos + 1) / 2.0
    return float(u_stat / (n_pos * n_neg))


def average_precision(scores, labels) -> float:
    """Average precision over the descending-score sweep.

    Each object is its own cut-off; equal scores are ordered by ascending
    original index.
    """
    scores, labels = _validate(scores, labels)
    order = np.lexsort((np.arange(scores.size), -scores))
    hits = labels[order]
    precision = np.cumsum(hits) / np.arange(1, hits.size + 1)
    return float(precision[hits].sum() / hits.sum())
