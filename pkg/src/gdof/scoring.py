"""Attribute relevance, outlier factors, the adaptive threshold and the detector."""

from __future__ import annotations

import csv
import json
import os
from dataclasses import asdict, dataclass, field

import numpy as np

from gdof.dataset import Dataset, LabelState
from gdof.density import DensityMatrix, density_matrix
from gdof.granulation import optimize_radius, radius_grid
from gdof.sampling import sample_negatives, sampling_distribution

REPORT_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class DetectConfig:
    """Detector settings.

    ``grid`` overrides the default radius grid built from ``grid_step``.
    """

    n_negatives: int = 200
    grid_step: float = 0.01
    seed: int = 0
    grid: tuple[float, ...] | None = None
    n_jobs: int = 1

    def __post_init__(self):
        if self.n_negatives < 1:
            raise ValueError("n_negatives must be at least 1")
        if self.grid is None and not 0.0 < self.grid_step <= 1.0:
            raise ValueError("grid_step must lie in (0, 1]")

    def radius_grid(self) -> np.ndarray:
        if self.grid is not None:
            return np.asarray(self.grid, dtype=np.float64)
        return radius_grid(self.grid_step)


@dataclass(frozen=True)
class ScoreReport:
    scores: np.ndarray
    threshold: float
    outlier_set: np.ndarray
    positives: np.ndarray
    negatives: np.ndarray
    radii: np.ndarray
    relevances: np.ndarray
    config: DetectConfig = field(default_factory=DetectConfig)

    @property
    def predicted(self) -> np.ndarray:
        return self.scores > self.threshold

    def to_dict(self) -> dict:
        cfg = asdict(self.config)
        cfg.pop("n_jobs")
        cfg["labeled_outliers"] = int(self.positives.size)
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "n_objects": int(self.scores.size),
            "threshold": float(self.threshold),
            "outlier_set": self.outlier_set.tolist(),
            "positives": self.positives.tolist(),
            "negatives": self.negatives.tolist(),
            "radii": self.radii.tolist(),
            "relevances": self.relevances.tolist(),
            "scores": self.scores.tolist(),
            "config": cfg,
        }

    def write_json(self, path: str | os.PathLike) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=1)
            fh.write("\n")

    def write_csv(self, path: str | os.PathLike) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["index", "score", "predicted_outlier"])
            for i, (s, p) in enumerate(zip(self.scores, self.predicted)):
                writer.writerow([i, repr(float(s)), int(p)])


def _label_sets(positives, negatives):
    positives = np.asarray(positives, dtype=np.int64)
    negatives = np.asarray(negatives, dtype=np.int64)
    if positives.size == 0 or negatives.size == 0:
        raise ValueError("both label sets must be non-empty")
    return positives, negatives


def relevance_vector(densities: DensityMatrix, positives, negatives) -> np.ndarray:
    """Relevance of every attribute: mean density over negatives minus over positives."""
    positives, negatives = _label_sets(positives, negatives)
    if np.intersect1d(positives, negatives).size:
        raise ValueError("label sets must be disjoint")
    gd = densities.values
    return gd[negatives].mean(axis=0) - gd[positives].mean(axis=0)


def attribute_relevance(densities: DensityMatrix, positives, negatives, k: int) -> float:
    return float(relevance_vector(densities, positives, negatives)[k])


def gdof_scores(densities: DensityMatrix, relevances) -> np.ndarray:
    """Outlier factor of every object: one minus the relevance-weighted mean density."""
    gd = densities.values
    relevances = np.asarray(relevances, dtype=np.float64)
    return 1.0 - (gd * relevances).sum(axis=1) / gd.shape[1]


def gdof_score(densities: DensityMatrix, relevances, i: int) -> float:
    return float(gdof_scores(densities, relevances)[i])


def compute_threshold(scores, positives, negatives) -> float:
    """Midpoint of the lowest labeled-outlier score and the highest inlier score."""
    positives, negatives = _label_sets(positives, negatives)
    scores = np.asarray(scores, dtype=np.float64)
    return 0.5 * (scores[positives].min() + scores[negatives].max())


def detect(dataset: Dataset, positives, config: DetectConfig | None = None) -> ScoreReport:
    """Score every object and flag those above the adaptive threshold.

    Steps run in a fixed order: sample negatives from the unlabeled pool,
    fit a radius per numerical attribute, compute granule densities, weight
    attributes by relevance, score, threshold.
    """
    config = config or DetectConfig()
    if not dataset.normalized:
        raise ValueError("detect needs a normalized dataset; run gdof.prepare first")
    labels = LabelState(positives)
    if labels.positives.size == 0:
        raise ValueError("at least one labeled outlier is required")
    labels.validate(dataset)
    pos = labels.positives

    dist = sampling_distribution(dataset, pos)
    neg = sample_negatives(dist, config.n_negatives, config.seed)

    grid = config.radius_grid()
    radii = np.zeros(dataset.n_attributes)
    for k in range(dataset.n_attributes):
        attr = dataset.attribute(k)
        if attr.is_numerical:
            radii[k] = optimize_radius(attr, pos, neg, grid)

    densities = density_matrix(dataset, radii, n_jobs=config.n_jobs)
    relevances = relevance_vector(densities, pos, neg)
    scores = gdof_scores(densities, relevances)
    threshold = compute_threshold(scores, pos, neg)
    outliers = np.flatnonzero(scores > threshold)
    return ScoreReport(scores, float(threshold), outliers, pos, neg, radii, relevances, config)
