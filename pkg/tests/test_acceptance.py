"""Acceptance criteria, one test each, every one reporting a PASS/FAIL line.

Dataset criteria run at 5 labeled outliers, 200 sampled inliers and 10 trials
using the CSV files in ``data/`` (or ``$GDOF_DATA_DIR``).
"""

import json
import time
from functools import lru_cache

import numpy as np
import pytest

from conftest import DATA_DIR, report_criterion
from gdof import oracle
from gdof.experiment import ExperimentConfig, run_experiment, sweep_negatives
from gdof.scoring import DetectConfig, detect
from properties import check_dense_bounds, check_distant_point_lowers_density
from test_granulation import check_inclusion
from test_metrics import metrics_agree_with_enumeration


@lru_cache(maxsize=None)
def evaluate(name: str, counts=(5,), n_negatives: int = 200):
    """(report summary, wall seconds) for one dataset; fails the test if the file is absent."""
    path = DATA_DIR / f"{name}.csv"
    if not path.exists():
        return None, 0.0
    cfg = ExperimentConfig(data_path=str(path), labeled_outlier_counts=counts,
                           n_negatives=n_negatives, trials=10)
    start = time.perf_counter()
    report = run_experiment(cfg)
    return report, time.perf_counter() - start


def dataset_criterion(number, name, min_auc, max_seconds=None, min_ap=None):
    report, seconds = evaluate(name)
    if report is None:
        report_criterion(number, name, False, f"{name}.csv unavailable in {DATA_DIR}")
        pytest.fail(f"{name}.csv not found; supply it to evaluate this criterion")
    summary = report.to_dict()
    checks = [summary["mean_auc"] >= min_auc]
    detail = f"mean AUC {summary['mean_auc']:.4f} (need >= {min_auc})"
    if min_ap is not None:
        checks.append(summary["mean_ap"] >= min_ap)
        detail += f", mean AP {summary['mean_ap']:.4f} (need >= {min_ap})"
    if max_seconds is not None:
        checks.append(seconds < max_seconds)
        detail += f", runtime {seconds:.2f}s (need < {max_seconds}s)"
    report_criterion(number, name, all(checks), detail)
    assert all(checks), detail


def test_breastw():
    dataset_criterion(1, "breastw", 0.95, max_seconds=10)


def test_musk():
    dataset_criterion(2, "musk", 0.99, max_seconds=120, min_ap=0.95)


def test_mushroom2():
    dataset_criterion(3, "mushroom2", 0.90)


def test_audiology():
    dataset_criterion(4, "audiology", 0.80, max_seconds=5)


def test_annthyroid():
    dataset_criterion(5, "annthyroid", 0.90, max_seconds=120)


def test_more_labels_do_not_hurt():
    details, ok = [], True
    for name in ("breastw", "mushroom2"):
        report, _ = evaluate(name, counts=(5, 30))
        if report is None:
            report_criterion(6, "label trend", False, f"{name}.csv unavailable")
            pytest.fail(f"{name}.csv not found")
        by = report.by_count()
        low, high = by[5]["mean_auc"], by[30]["mean_auc"]
        ok &= high >= low - 0.02
        details.append(f"{name} AUC@5 {low:.4f} -> AUC@30 {high:.4f}")
    report_criterion(6, "label trend", ok, "; ".join(details) + " (need AUC@30 >= AUC@5 - 0.02)")
    assert ok


def test_negative_sweep_stability():
    path = DATA_DIR / "breastw.csv"
    if not path.exists():
        report_criterion(7, "sampled-inlier sweep", False, "breastw.csv unavailable")
        pytest.fail("breastw.csv not found")
    cfg = ExperimentConfig(data_path=str(path), labeled_outlier_counts=(5,), trials=10)
    series = sweep_negatives(cfg, (200, 300, 400, 500))["series"]
    aucs = [row["mean_auc"] for row in series]
    spread = max(aucs) - min(aucs)
    detail = ", ".join(f"{row['n_negatives']}: {row['mean_auc']:.4f}" for row in series)
    report_criterion(7, "sampled-inlier sweep", spread < 0.05,
                     f"{detail}; max gap {spread:.4f} (need < 0.05)")
    assert spread < 0.05


def run_property(number, label, check, count, seed):
    rng = np.random.default_rng(seed)
    passed = sum(bool(check(rng)) for _ in range(count))
    report_criterion(number, label, passed == count, f"{passed}/{count} instances hold")
    assert passed == count


def test_inclusion_property():
    run_property(8, "attribute-set inclusion", check_inclusion, 1000, seed=8)


def test_dense_cluster_bounds():
    run_property(9, "dense-cluster density bounds", check_dense_bounds, 1000, seed=9)


def test_distant_point_lowers_density():
    run_property(10, "distant point lowers density", check_distant_point_lowers_density, 500,
                 seed=10)


def test_oracle_equivalence():
    result = oracle.run_suite(n_instances=200, seed=11, tolerance=1e-12)
    report_criterion(11, "brute-force equivalence", result["passed"],
                     f"max abs score error {result['max_abs_error']:.2e} over "
                     f"{result['instances']} instances, {len(result['failures'])} failures "
                     f"(need <= 1e-12)")
    assert result["passed"], result["failures"][:5]


def test_metric_oracles():
    run_property(12, "AUC/AP enumeration", metrics_agree_with_enumeration, 2000, seed=12)


def test_byte_identical_outputs(tmp_path):
    path = DATA_DIR / "breastw.csv"
    if not path.exists():
        from test_experiment import synthetic_csv
        path = synthetic_csv(tmp_path / "syn.csv")
    cfg = ExperimentConfig(data_path=str(path), labeled_outlier_counts=(5, 10), trials=3)
    ds = cfg.load_dataset()
    outputs = {}
    for jobs in (1, 4, 1):
        labels = ds.outlier_indices()[:5]
        rep = detect(ds, labels, DetectConfig(seed=3, n_jobs=jobs))
        rep.write_json(tmp_path / "s.json")
        rep.write_csv(tmp_path / "s.csv")
        run_experiment(ExperimentConfig(**{**cfg.__dict__, "n_jobs": jobs}), ds).write_json(
            tmp_path / "r.json")
        outputs.setdefault("files", []).append(tuple(
            (tmp_path / f).read_bytes() for f in ("s.json", "s.csv", "r.json")))
    identical = len(set(outputs["files"])) == 1
    report_criterion(13, "determinism", identical,
                     "score JSON/CSV and report JSON identical for 1, 4, 1 worker threads"
                     if identical else "outputs differ between runs")
    assert identical
    json.loads(outputs["files"][0][2])
