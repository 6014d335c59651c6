"""Brute-force reference implementation for small instances.

Everything here is written as plain loops over object pairs with the full
relation matrix materialised, deliberately sharing no code with the
production modules. Only the final weighted draw of negatives uses the same
NumPy primitive, so that both paths see the same sampled inliers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from gdof.dataset import CATEGORICAL, NUMERICAL, Dataset, normalize


def relation_matrix(values, numerical: bool, lam: float) -> list[list[float]]:
    n = len(values)
    rel = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if numerical:
                d = abs(float(values[i]) - float(values[j]))
                rel[i][j] = 1.0 - d if d <= lam else 0.0
            else:
                rel[i][j] = 1.0 if values[i] == values[j] else 0.0
    return rel


def conjunction_matrix(matrices) -> list[list[float]]:
    n = len(matrices[0])
    return [[min(m[i][j] for m in matrices) for j in range(n)] for i in range(n)]


def granule_densities(rel) -> list[float]:
    n = len(rel)
    card = [sum(rel[i][j] for j in range(n)) for i in range(n)]
    out = []
    for i in range(n):
        nbrs = [j for j in range(n) if rel[i][j] > 0]
        lgd = card[i] / (sum(card[j] for j in nbrs) / len(nbrs))
        out.append(card[i] / n * lgd)
    return out


def radius_objective(values, positives, negatives, grid) -> list[float]:
    n = len(values)
    out = []
    for lam in grid:
        rel = relation_matrix(values, True, lam)
        neg = sum(sum(rel[i][y] for y in range(n)) for i in negatives) / (len(negatives) * n)
        pos = sum(sum(rel[i][y] for y in range(n)) for i in positives) / (len(positives) * n)
        out.append(neg - pos)
    return out


def sampling_probabilities(dataset: Dataset, positives) -> tuple[list[int], list[float]]:
    n, m = dataset.n_objects, dataset.n_attributes
    candidates = [i for i in range(n) if i not in set(int(p) for p in positives)]
    scores = []
    for i in candidates:
        total = 0.0
        for k in range(m):
            col = dataset.columns[k]
            numerical = dataset.schema[k].is_numerical
            dsum = 0.0
            for j in range(n):
                dsum += abs(col[i] - col[j]) if numerical else float(col[i] != col[j])
            total += dsum / n
        scores.append(1.0 - total / m)
    top = max(scores)
    ex = [math.exp(s - top) for s in scores]
    z = sum(ex)
    return candidates, [e / z for e in ex]


@dataclass
class OracleResult:
    scores: list[float]
    threshold: float
    outlier_set: list[int]
    negatives: list[int]
    radii: list[float]


def detect(dataset: Dataset, positives, n_negatives: int, grid, seed: int) -> OracleResult:
    positives = sorted(int(p) for p in positives)
    n, m = dataset.n_objects, dataset.n_attributes

    candidates, probs = sampling_probabilities(dataset, positives)
    if n_negatives >= len(candidates):
        negatives = list(candidates)
    else:
        rng = np.random.default_rng(seed)
        p = np.array(probs)
        picked = rng.choice(len(candidates), size=n_negatives, replace=False, p=p / p.sum())
        negatives = sorted(candidates[int(t)] for t in picked)

    radii, gd_columns = [], []
    for k in range(m):
        col = dataset.columns[k]
        numerical = dataset.schema[k].is_numerical
        lam = 0.0
        if numerical:
            objective = radius_objective(col, positives, negatives, grid)
            best = max(objective)
            slack = 1e-12 * max(1.0, abs(best))
            lam = float(next(g for g, v in zip(grid, objective) if v >= best - slack))
        radii.append(lam)
        gd_columns.append(granule_densities(relation_matrix(col, numerical, lam)))

    gamma = []
    for k in range(m):
        gd = gd_columns[k]
        gamma.append(sum(gd[i] for i in negatives) / len(negatives)
                     - sum(gd[j] for j in positives) / len(positives))
    scores = [1.0 - sum(gamma[k] * gd_columns[k][i] for k in range(m)) / m for i in range(n)]
    threshold = 0.5 * (min(scores[i] for i in positives) + max(scores[j] for j in negatives))
    outliers = [i for i in range(n) if scores[i] > threshold]
    return OracleResult(scores, threshold, outliers, negatives, radii)


def random_instance(rng: np.random.Generator, max_objects: int = 20, max_attributes: int = 3):
    """A small random mixed-type problem: (dataset, positives, n_negatives, grid, seed)."""
    n = int(rng.integers(4, max_objects + 1))
    m = int(rng.integers(1, max_attributes + 1))
    kinds, cols = [], []
    for _ in range(m):
        if rng.random() < 0.3:
            kinds.append(CATEGORICAL)
            cols.append(rng.integers(0, int(rng.integers(1, 5)), size=n))
        else:
            kinds.append(NUMERICAL)
            if rng.random() < 0.3:
                cols.append(rng.integers(0, 6, size=n).astype(float))
            else:
                cols.append(rng.random(n))
    gt = np.zeros(n, dtype=bool)
    n_out = int(rng.integers(1, max(2, n // 3) + 1))
    gt[rng.choice(n, size=n_out, replace=False)] = True
    data = np.empty((n, m), dtype=object)
    for k in range(m):
        data[:, k] = cols[k]
    dataset = normalize(Dataset.from_arrays(data, kinds=kinds, ground_truth=gt))
    positives = np.sort(rng.choice(np.flatnonzero(gt), size=int(rng.integers(1, n_out + 1)),
                                   replace=False))
    n_negatives = int(rng.integers(1, n - positives.size + 2))
    step = float(rng.choice([0.05, 0.1, 0.2, 0.25]))
    grid = [round(step * t, 12) for t in range(1, int(round(1 / step)) + 1)]
    return dataset, positives, n_negatives, grid, int(rng.integers(0, 2**31))


def run_suite(n_instances: int = 200, seed: int = 0, tolerance: float = 1e-12) -> dict:
    """Compare :func:`gdof.scoring.detect` against :func:`detect` on random instances."""
    from gdof.scoring import DetectConfig
    from gdof.scoring import detect as fast_detect

    rng = np.random.default_rng(seed)
    worst = 0.0
    failures = []
    for t in range(n_instances):
        dataset, positives, n_neg, grid, run_seed = random_instance(rng)
        ref = detect(dataset, positives, n_neg, grid, run_seed)
        got = fast_detect(dataset, positives,
                          DetectConfig(n_negatives=n_neg, grid=tuple(grid), seed=run_seed))
        err = float(np.max(np.abs(np.asarray(ref.scores) - got.scores)))
        same_sets = (got.negatives.tolist() == ref.negatives
                     and got.outlier_set.tolist() == ref.outlier_set)
        worst = max(worst, err)
        if err > tolerance or not same_sets:
            failures.append({"instance": t, "max_abs_error": err, "same_sets": same_sets})
    return {"instances": n_instances, "max_abs_error": worst, "tolerance": tolerance,
            "failures": failures, "passed": not failures}
