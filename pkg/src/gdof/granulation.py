"""Fuzzy similarity relations, fuzzy granules and label-informed granule radii.

For a numerical attribute the similarity of two objects is ``1 - d`` when
their distance ``d`` is within the radius and 0 otherwise; for a categorical
attribute it is the equality indicator. A granule is the row of similarities
of one center object to every object. Rows are generated on demand; the
n-by-n relation matrix is never stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from gdof.dataset import Attribute

#: Relative slack under which two objective values count as tied.
TIE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class GranuleRow:
    center: int
    memberships: np.ndarray


def _check_radius(lam: float) -> None:
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"radius must lie in [0, 1], got {lam}")


def _check_index(attr: Attribute, *indices: int) -> None:
    n = len(attr.values)
    for i in indices:
        if not 0 <= i < n:
            raise IndexError(f"object index {i} out of range for {n} objects")


def relation_value(attr: Attribute, i: int, j: int, lam: float) -> float:
    """Similarity of objects ``i`` and ``j`` on a single attribute."""
    _check_index(attr, i, j)
    _check_radius(lam)
    fi, fj = attr.values[i], attr.values[j]
    if not attr.is_numerical:
        return 1.0 if fi == fj else 0.0
    d = abs(float(fi) - float(fj))
    return 1.0 - d if d <= lam else 0.0


def relation_from_values(center_value, values: np.ndarray, lam: float,
                         numerical: bool) -> np.ndarray:
    """Vectorised similarity of one value against an array of values."""
    if not numerical:
        return (values == center_value).astype(np.float64)
    d = np.abs(values - center_value)
    return np.where(d <= lam, 1.0 - d, 0.0)


def relation_row(attr: Attribute, i: int, lam: float) -> GranuleRow:
    """The fuzzy granule centered at object ``i``."""
    _check_index(attr, i)
    _check_radius(lam)
    row = relation_from_values(attr.values[i], attr.values, lam, attr.is_numerical)
    return GranuleRow(i, row)


def conjunction_row(rows: Sequence[GranuleRow], i: int) -> GranuleRow:
    """Granule of an attribute set: the pointwise minimum of its single-attribute rows."""
    if not rows:
        raise ValueError("need at least one row")
    n = len(rows[0].memberships)
    for r in rows:
        if r.center != i or len(r.memberships) != n:
            raise ValueError("rows must share the center and length")
    out = rows[0].memberships
    for r in rows[1:]:
        out = np.minimum(out, r.memberships)
    return GranuleRow(i, np.array(out, dtype=np.float64))


def granule_cardinality(row: GranuleRow) -> float:
    """Fuzzy cardinality: the sum of memberships."""
    return float(np.sum(row.memberships))


def radius_grid(step: float = 0.01) -> np.ndarray:
    """Candidate radii ``step, 2*step, ..., <= 1``."""
    if not 0.0 < step <= 1.0:
        raise ValueError("grid step must lie in (0, 1]")
    count = int(np.floor(1.0 / step + 1e-9))
    return np.round(np.arange(1, count + 1) * step, 12)


def _check_grid(grid) -> np.ndarray:
    grid = np.asarray(grid, dtype=np.float64)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("radius grid must be a non-empty 1-D sequence")
    if grid.min() < 0.0 or grid.max() > 1.0:
        raise ValueError("radius grid values must lie in [0, 1]")
    if np.any(np.diff(grid) < 0):
        raise ValueError("radius grid must be sorted ascending")
    return grid


def radius_objective(attr: Attribute, positives, negatives, grid) -> np.ndarray:
    """Separation objective for every radius in ``grid``.

    The value at radius ``lam`` is the mean granule size (relative to n) of
    the negatives minus that of the positives.
    """
    if not attr.is_numerical:
        raise ValueError("radius search only applies to numerical attributes")
    positives = np.asarray(positives, dtype=np.int64)
    negatives = np.asarray(negatives, dtype=np.int64)
    if positives.size == 0 or negatives.size == 0:
        raise ValueError("positives and negatives must be non-empty")
    grid = _check_grid(grid)
    values = attr.values
    n = len(values)
    uniq, counts = np.unique(values, return_counts=True)
    labeled = np.concatenate([negatives, positives])
    n_grid = grid.size

    # Each labeled row's similarity mass is binned by the first grid radius
    # that admits it; a cumulative sum over bins then gives the row sums for
    # every radius at once.
    dist = np.abs(values[labeled][:, None] - uniq[None, :])
    mass = (1.0 - dist) * counts
    slot = np.searchsorted(grid, dist, side="left")
    flat = (np.arange(labeled.size)[:, None] * (n_grid + 1) + slot).ravel()
    binned = np.bincount(flat, weights=mass.ravel(), minlength=labeled.size * (n_grid + 1))
    sums = np.cumsum(binned.reshape(labeled.size, n_grid + 1), axis=1)[:, :n_grid]

    neg_mean = sums[:negatives.size].mean(axis=0) / n
    pos_mean = sums[negatives.size:].mean(axis=0) / n
    return neg_mean - pos_mean


def argmax_smallest(objective: np.ndarray) -> int:
    """Index of the maximum; near-ties resolve to the smallest index."""
    best = objective.max()
    slack = TIE_TOLERANCE * max(1.0, abs(best))
    return int(np.flatnonzero(objective >= best - slack)[0])


def optimize_radius(attr: Attribute, positives, negatives, grid) -> float:
    """Grid radius maximizing the separation objective; ties go to the smallest radius."""
    grid = _check_grid(grid)
    objective = radius_objective(attr, positives, negatives, grid)
    return float(grid[argmax_smallest(objective)])
