"""Detecting outliers in mixed-type data from three labeled examples.

Run with ``python demos/02_detect_synthetic.py``.
"""

import numpy as np

from gdof import Dataset, DetectConfig, auc, detect, prepare
from gdof.dataset import CATEGORICAL, NUMERICAL

rng = np.random.default_rng(0)
n_in, n_out = 300, 15

# Inliers: two correlated measurements near the middle and a mostly "ok" status.
# Outliers: scattered measurements and frequently unusual status codes.
measurements = np.vstack([rng.normal([10, 50], [1, 5], (n_in, 2)),
                          rng.uniform([0, 0], [20, 100], (n_out, 2))])
status = np.r_[rng.choice(["ok", "warn"], n_in, p=[0.95, 0.05]),
               rng.choice(["ok", "warn", "fail"], n_out)]
truth = np.r_[np.zeros(n_in, bool), np.ones(n_out, bool)]

data = np.column_stack([measurements.astype(object), status])
raw = Dataset.from_arrays(data, kinds=[NUMERICAL, NUMERICAL, CATEGORICAL],
                          names=["temperature", "pressure", "status"], ground_truth=truth)
dataset = prepare(raw)  # median/extra-category imputation, then min-max scaling

labeled = np.flatnonzero(truth)[:3]
report = detect(dataset, labeled, DetectConfig(n_negatives=100, seed=1))

print("fitted radius per attribute:", dict(zip(dataset.names, np.round(report.radii, 2).tolist())))
print("attribute relevance:       ", dict(zip(dataset.names, np.round(report.relevances, 3).tolist())))
print(f"threshold {report.threshold:.4f}; {report.outlier_set.size} objects flagged")

hidden = np.setdiff1d(np.arange(dataset.n_objects), np.r_[labeled, report.negatives])
print(f"AUC on objects the detector never saw labeled: "
      f"{auc(report.scores[hidden], truth[hidden]):.3f}")
flagged_truth = truth[report.outlier_set]
print(f"precision of the flagged set: {flagged_truth.mean():.2f} "
      f"({flagged_truth.sum()} of {n_out} true outliers found)")
