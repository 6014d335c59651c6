"""Granule cardinalities, local granule density and granule density.

The granule density of an object on one attribute is its global density
(granule cardinality over n) times its local density (cardinality over the
mean cardinality of its positive-membership neighbours).

Production path: objects sharing a value on an attribute share their granule,
so both passes run over the distinct values weighted by multiplicity. Memory
stays O(n + chunk); the full n-by-n relation is never built. Per-object
functions (:func:`local_granule_density`, :func:`granule_density`) regenerate
single rows and serve as the streaming reference.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from gdof.dataset import Attribute, Dataset
from gdof.granulation import relation_from_values, relation_row

# upper bound on distinct-value pairs held in memory at once
_CHUNK_CELLS = 1 << 22


@dataclass(frozen=True)
class DensityMatrix:
    values: np.ndarray  # (n, m) granule densities
    radii: np.ndarray   # (m,) radius per attribute, 0 for categorical ones


def _chunks(size: int, width: int):
    step = max(1, _CHUNK_CELLS // max(width, 1))
    for start in range(0, size, step):
        yield slice(start, min(start + step, size))


def _grouped_passes(attr: Attribute, lam: float):
    """Per distinct value: cardinality, neighbour count, neighbour cardinality sum."""
    uniq, inverse, counts = np.unique(attr.values, return_inverse=True, return_counts=True)
    weights = counts.astype(np.float64)
    if not attr.is_numerical:
        # equality relation: a value's neighbours are exactly its own copies
        return inverse, weights, weights, weights * weights
    card = np.empty(uniq.size)
    for rows in _chunks(uniq.size, uniq.size):
        rel = relation_from_values(uniq[rows, None], uniq[None, :], lam, True)
        card[rows] = (rel * weights).sum(axis=1)
    n_nbr = np.empty(uniq.size)
    nbr_sum = np.empty(uniq.size)
    card_mass = card * weights
    for rows in _chunks(uniq.size, uniq.size):
        rel = relation_from_values(uniq[rows, None], uniq[None, :], lam, True)
        linked = rel > 0.0
        n_nbr[rows] = (linked * weights).sum(axis=1)
        nbr_sum[rows] = (linked * card_mass).sum(axis=1)
    return inverse, card, n_nbr, nbr_sum


def cardinalities(attr: Attribute, lam: float) -> np.ndarray:
    """Fuzzy cardinality of every object's granule on one attribute."""
    inverse, card, _, _ = _grouped_passes(attr, lam)
    return card[inverse]


def local_granule_density(attr: Attribute, lam: float, card: np.ndarray, i: int) -> float:
    """Cardinality of object ``i`` over the mean cardinality of its neighbours."""
    row = relation_row(attr, i, lam).memberships
    neighbours = row > 0.0
    return float(card[i] / card[neighbours].mean())


def granule_density(attr: Attribute, lam: float, card: np.ndarray, i: int) -> float:
    """Global density ``card[i] / n`` times the local granule density."""
    n = len(attr.values)
    return float(card[i] / n * local_granule_density(attr, lam, card, i))


def attribute_densities(attr: Attribute, lam: float) -> np.ndarray:
    """Granule density of every object on one attribute."""
    n = len(attr.values)
    inverse, card, n_nbr, nbr_sum = _grouped_passes(attr, lam)
    lgd = card / (nbr_sum / n_nbr)
    return (card / n * lgd)[inverse]


def density_matrix(dataset: Dataset, radii, n_jobs: int = 1) -> DensityMatrix:
    """Granule densities of all objects on all attributes.

    Attributes are independent, so ``n_jobs > 1`` spreads them over threads;
    each column is computed identically whatever the worker count.
    """
    radii = np.asarray(radii, dtype=np.float64)
    if radii.shape != (dataset.n_attributes,):
        raise ValueError("one radius per attribute required")
    if np.any((radii < 0) | (radii > 1)):
        raise ValueError("radii must lie in [0, 1]")

    def column(k):
        return attribute_densities(dataset.attribute(k), radii[k])

    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            cols = list(pool.map(column, range(dataset.n_attributes)))
    else:
        cols = [column(k) for k in range(dataset.n_attributes)]
    return DensityMatrix(np.column_stack(cols), radii.copy())
