"""Repeated-trial evaluation protocol and report files.

For each labeled-outlier count ``c`` and trial ``t`` the seed is
``base_seed + t``: draw ``c`` labeled outliers, run the detector, then score
AUC/AP on the objects that were neither labeled nor sampled as inliers. The
variant over all objects outside the labeled outliers is reported alongside.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from gdof.dataset import Dataset, draw_labeled_outliers, load_csv, prepare, read_schema_file
from gdof.metrics import auc, average_precision
from gdof.scoring import DetectConfig, detect

REPORT_SCHEMA_VERSION = 1
DEFAULT_COUNTS = (5, 10, 15, 20, 25, 30)
SWEEP_NEGATIVES = (50, 100, 200, 300, 400, 500)


@dataclass(frozen=True)
class ExperimentConfig:
    data_path: str | None = None
    schema_path: str | None = None
    label_column: str = "label"
    labeled_outlier_counts: tuple[int, ...] = DEFAULT_COUNTS
    n_negatives: int = 200
    trials: int = 10
    base_seed: int = 0
    grid_step: float = 0.01
    n_jobs: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not self.labeled_outlier_counts or min(self.labeled_outlier_counts) < 1:
            raise ValueError("labeled outlier counts must be positive")
        if not 0.0 < self.grid_step <= 1.0:
            raise ValueError("grid_step must lie in (0, 1]")
        object.__setattr__(self, "labeled_outlier_counts",
                           tuple(int(c) for c in self.labeled_outlier_counts))

    def load_dataset(self) -> Dataset:
        if self.data_path is None:
            raise ValueError("no data_path configured")
        schema = read_schema_file(self.schema_path) if self.schema_path else "infer"
        return prepare(load_csv(self.data_path, schema, label_column=self.label_column))


@dataclass(frozen=True)
class TrialResult:
    labeled_outliers: int
    trial: int
    seed: int
    auc: float
    ap: float
    auc_unlabeled: float
    ap_unlabeled: float
    wall_time: float = field(default=0.0, compare=False)


def _metric(fn, scores, truth) -> float:
    # a test split holding a single class has no defined ranking metric
    if truth.all() or not truth.any():
        return float("nan")
    return fn(scores, truth)


def run_trial(dataset: Dataset, count: int, trial: int, config: ExperimentConfig) -> TrialResult:
    seed = config.base_seed + trial
    start = time.perf_counter()
    labels = draw_labeled_outliers(dataset, count, seed)
    report = detect(dataset, labels.positives,
                    DetectConfig(n_negatives=config.n_negatives, grid_step=config.grid_step,
                                 seed=seed))
    truth = dataset.ground_truth
    unlabeled = np.ones(dataset.n_objects, dtype=bool)
    unlabeled[report.positives] = False
    test = unlabeled.copy()
    test[report.negatives] = False
    return TrialResult(
        labeled_outliers=count, trial=trial, seed=seed,
        auc=_metric(auc, report.scores[test], truth[test]),
        ap=_metric(average_precision, report.scores[test], truth[test]),
        auc_unlabeled=_metric(auc, report.scores[unlabeled], truth[unlabeled]),
        ap_unlabeled=_metric(average_precision, report.scores[unlabeled], truth[unlabeled]),
        wall_time=time.perf_counter() - start,
    )


def summarize(results: list[TrialResult]) -> dict:
    out = {}
    for metric in ("auc", "ap", "auc_unlabeled", "ap_unlabeled"):
        vals = np.array([getattr(r, metric) for r in results])
        vals = vals[~np.isnan(vals)]
        out[f"mean_{metric}"] = float(vals.mean()) if vals.size else None
        out[f"std_{metric}"] = float(vals.std()) if vals.size else None
    return out


def _json_safe(row: dict) -> dict:
    return {k: (None if isinstance(v, float) and np.isnan(v) else v) for k, v in row.items()}


@dataclass
class ExperimentReport:
    dataset: str
    config: ExperimentConfig
    per_trial: list[TrialResult]

    def by_count(self) -> dict[int, dict]:
        return {c: summarize([r for r in self.per_trial if r.labeled_outliers == c])
                for c in self.config.labeled_outlier_counts}

    def to_dict(self, include_timing: bool = False) -> dict:
        cfg = asdict(self.config)
        cfg.pop("n_jobs")
        cfg["labeled_outlier_counts"] = list(cfg["labeled_outlier_counts"])
        trials = []
        for r in self.per_trial:
            row = asdict(r)
            if not include_timing:
                row.pop("wall_time")
            trials.append(_json_safe(row))
        out = {"schema_version": REPORT_SCHEMA_VERSION, "dataset": self.dataset, "config": cfg,
               "per_trial": trials}
        out.update(summarize(self.per_trial))
        out["by_count"] = {str(c): s for c, s in self.by_count().items()}
        return out

    def write_json(self, path: str | os.PathLike, include_timing: bool = False) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(include_timing), fh, indent=1)
            fh.write("\n")


def run_experiment(config: ExperimentConfig, dataset: Dataset | None = None) -> ExperimentReport:
    """Run every (count, trial) pair; results are ordered by count then trial.

    ``config.n_jobs > 1`` runs trials on a thread pool. Each trial owns its
    seed, so the report does not depend on the worker count.
    """
    if dataset is None:
        dataset = config.load_dataset()
    if dataset.ground_truth is None:
        raise ValueError("evaluation needs ground-truth labels")
    if not dataset.normalized:
        dataset = prepare(dataset)
    jobs = [(c, t) for c in config.labeled_outlier_counts for t in range(config.trials)]
    if config.n_jobs > 1:
        with ThreadPoolExecutor(max_workers=config.n_jobs) as pool:
            results = list(pool.map(lambda job: run_trial(dataset, *job, config), jobs))
    else:
        results = [run_trial(dataset, c, t, config) for c, t in jobs]
    return ExperimentReport(dataset.name, config, results)


def sweep_negatives(config: ExperimentConfig, values=SWEEP_NEGATIVES,
                    dataset: Dataset | None = None) -> dict:
    """Mean/std metrics for each inlier-sample size; the series behind an N- plot."""
    if dataset is None:
        dataset = config.load_dataset()
    series = []
    for n_neg in values:
        cfg = ExperimentConfig(**{**asdict(config), "n_negatives": int(n_neg)})
        report = run_experiment(cfg, dataset)
        row = {"n_negatives": int(n_neg)}
        row.update(summarize(report.per_trial))
        series.append(row)
    cfg = asdict(config)
    cfg.pop("n_jobs")
    cfg.pop("n_negatives")
    cfg["labeled_outlier_counts"] = list(cfg["labeled_outlier_counts"])
    return {"schema_version": REPORT_SCHEMA_VERSION, "dataset": dataset.name, "config": cfg,
            "series": series}
