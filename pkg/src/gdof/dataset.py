"""Typed tabular data: CSV ingestion, imputation, min-max normalization and labels.

A :class:`Dataset` holds one 1-D array per attribute. Numerical columns are
``float64`` (``NaN`` marks a missing cell before imputation); categorical
columns are ``int64`` codes (``-1`` marks a missing cell before imputation).
Datasets are immutable: every transformation returns a new instance whose
arrays are read-only.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Sequence

import numpy as np

NUMERICAL = "numerical"
CATEGORICAL = "categorical"
KINDS = (NUMERICAL, CATEGORICAL)

MISSING_MARKERS = frozenset({"", "?"})
MISSING_CODE = -1
MISSING_LABEL = "?"


class DatasetError(ValueError):
    """Raised for malformed input files, schemas or labels."""


@dataclass(frozen=True)
class AttributeSchema:
    name: str
    kind: str
    original_min: float | None = None
    original_max: float | None = None
    categories: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DatasetError(f"attribute {self.name!r}: unknown kind {self.kind!r}")
        if (self.original_min is not None and self.original_max is not None
                and self.original_min > self.original_max):
            raise DatasetError(f"attribute {self.name!r}: original_min > original_max")

    @property
    def is_numerical(self) -> bool:
        return self.kind == NUMERICAL


class Attribute(NamedTuple):
    """One column together with its kind; the unit the relation functions work on."""

    values: np.ndarray
    kind: str

    @property
    def is_numerical(self) -> bool:
        return self.kind == NUMERICAL


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Dataset:
    """n objects described by m typed attributes.

    Parameters
    ----------
    columns : sequence of ndarray
        One array of length ``n_objects`` per attribute.
    schema : sequence of AttributeSchema
        Attribute names and kinds, aligned with ``columns``.
    ground_truth : ndarray of bool, optional
        ``True`` marks an outlier.
    normalized : bool
        Set by :func:`normalize`; the scoring pipeline requires it.
    """

    columns: tuple[np.ndarray, ...]
    schema: tuple[AttributeSchema, ...]
    ground_truth: np.ndarray | None = None
    normalized: bool = False
    name: str = ""

    def __post_init__(self):
        columns = []
        for col, attr in zip(self.columns, self.schema):
            dtype = np.float64 if attr.is_numerical else np.int64
            columns.append(_frozen(np.asarray(col, dtype=dtype)))
        object.__setattr__(self, "columns", tuple(columns))
        object.__setattr__(self, "schema", tuple(self.schema))
        if len(self.columns) != len(self.schema):
            raise DatasetError("columns and schema have different lengths")
        if not self.columns:
            raise DatasetError("a dataset needs at least one attribute")
        names = [a.name for a in self.schema]
        if len(set(names)) != len(names):
            raise DatasetError("attribute names must be unique")
        n = len(self.columns[0])
        for col, attr in zip(self.columns, self.schema):
            if col.ndim != 1 or len(col) != n:
                raise DatasetError(f"column {attr.name!r} has the wrong length")
        if self.ground_truth is not None:
            gt = np.asarray(self.ground_truth)
            if gt.shape != (n,):
                raise DatasetError("ground_truth must have one entry per object")
            object.__setattr__(self, "ground_truth", _frozen(gt.astype(bool)))
        if self.normalized:
            for col, attr in zip(self.columns, self.schema):
                if attr.is_numerical:
                    if not np.all((col >= 0.0) & (col <= 1.0)):
                        raise DatasetError(f"column {attr.name!r} is not within [0, 1]")
                elif col.size and col.min() < 0:
                    raise DatasetError(f"column {attr.name!r} still has missing codes")

    @property
    def n_objects(self) -> int:
        return len(self.columns[0])

    @property
    def n_attributes(self) -> int:
        return len(self.columns)

    @property
    def names(self) -> list[str]:
        return [a.name for a in self.schema]

    @property
    def numerical_mask(self) -> np.ndarray:
        return np.array([a.is_numerical for a in self.schema])

    def attribute(self, k: int) -> Attribute:
        return Attribute(self.columns[k], self.schema[k].kind)

    def outlier_indices(self) -> np.ndarray:
        if self.ground_truth is None:
            raise DatasetError("dataset has no ground truth")
        return np.flatnonzero(self.ground_truth)

    def take(self, rows) -> "Dataset":
        """Row subset (or permutation) with the same schema."""
        rows = np.asarray(rows, dtype=np.int64)
        gt = None if self.ground_truth is None else self.ground_truth[rows]
        return replace(self, columns=tuple(c[rows] for c in self.columns), ground_truth=gt)

    @classmethod
    def from_arrays(cls, data, kinds: Sequence[str] | None = None,
                    names: Sequence[str] | None = None, ground_truth=None,
                    name: str = "") -> "Dataset":
        """Build a raw dataset from an (n, m) array-like.

        Categorical columns are encoded by order of first appearance; numerical
        columns are taken as floats (``NaN`` = missing).
        """
        data = np.asarray(data, dtype=object)
        if data.ndim == 1:
            data = data[:, None]
        m = data.shape[1]
        kinds = list(kinds) if kinds is not None else [NUMERICAL] * m
        names = list(names) if names is not None else [f"a{k}" for k in range(m)]
        if len(kinds) != m or len(names) != m:
            raise DatasetError("kinds/names must have one entry per column")
        columns, schema = [], []
        for k in range(m):
            if kinds[k] == NUMERICAL:
                columns.append(data[:, k].astype(np.float64))
                schema.append(AttributeSchema(names[k], NUMERICAL))
            else:
                codes, cats = _encode([None if _is_missing(v) else str(v) for v in data[:, k]])
                columns.append(codes)
                schema.append(AttributeSchema(names[k], CATEGORICAL, categories=cats))
        return cls(tuple(columns), tuple(schema), ground_truth, name=name)


@dataclass(frozen=True)
class LabelState:
    """Labeled outliers (positives) and sampled or known inliers (negatives)."""

    positives: np.ndarray
    negatives: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))
    rng_seed: int = 0

    def __post_init__(self):
        pos = np.unique(np.asarray(self.positives, dtype=np.int64))
        neg = np.unique(np.asarray(self.negatives, dtype=np.int64))
        if np.intersect1d(pos, neg).size:
            raise DatasetError("positives and negatives must be disjoint")
        object.__setattr__(self, "positives", _frozen(pos))
        object.__setattr__(self, "negatives", _frozen(neg))

    def with_negatives(self, negatives) -> "LabelState":
        return replace(self, negatives=negatives)

    def validate(self, dataset: Dataset) -> None:
        n = dataset.n_objects
        for idx in (self.positives, self.negatives):
            if idx.size and (idx.min() < 0 or idx.max() >= n):
                raise DatasetError("label index out of range")
        if dataset.ground_truth is not None and not dataset.ground_truth[self.positives].all():
            raise DatasetError("every labeled outlier must be a ground-truth outlier")


def _is_missing(value) -> bool:
    if value is None:
        return True
    if isinstance(value, float) and math.isnan(value):
        return True
    return isinstance(value, str) and value.strip() in MISSING_MARKERS


def _parse_real(cell: str) -> float | None:
    try:
        value = float(cell)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def _encode(cells: Sequence[str | None]) -> tuple[np.ndarray, tuple[str, ...]]:
    lookup: dict[str, int] = {}
    codes = np.empty(len(cells), dtype=np.int64)
    for i, cell in enumerate(cells):
        if cell is None:
            codes[i] = MISSING_CODE
        else:
            codes[i] = lookup.setdefault(cell, len(lookup))
    return codes, tuple(lookup)


def read_schema_file(path: str | os.PathLike) -> list[AttributeSchema]:
    """Read a sidecar schema: one ``name,kind`` line per attribute column."""
    schema = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.rsplit(",", 1)]
            if len(parts) != 2:
                raise DatasetError(f"{path}:{lineno}: expected 'name,kind'")
            schema.append(AttributeSchema(parts[0], parts[1]))
    return schema


def load_csv(path: str | os.PathLike, schema: Sequence[AttributeSchema] | str = "infer",
             label_column: str | None = None) -> Dataset:
    """Load a UTF-8 CSV file with a header row into a raw (un-normalized) dataset.

    With ``schema="infer"`` a column is numerical iff every non-missing cell
    parses as a finite real. ``""`` and ``"?"`` are missing markers. The
    optional ``label_column`` must hold 0 (inlier) / 1 (outlier) and becomes
    the ground truth.
    """
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            rows = list(csv.reader(fh))
    except (OSError, UnicodeDecodeError) as exc:
        raise DatasetError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise DatasetError(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    body = [r for r in rows[1:] if r]
    if len(body) < 2:
        raise DatasetError(f"{path}: need at least 2 data rows")
    for lineno, row in enumerate(body, 2):
        if len(row) != len(header):
            raise DatasetError(f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}")
    if any(not h for h in header):
        raise DatasetError(f"{path}: empty column name in header")
    if len(set(header)) != len(header):
        raise DatasetError(f"{path}: duplicate column names")

    ground_truth = None
    attr_idx = list(range(len(header)))
    if label_column is not None:
        if label_column not in header:
            raise DatasetError(f"{path}: label column {label_column!r} not found")
        li = header.index(label_column)
        attr_idx.remove(li)
        try:
            labels = [int(r[li]) for r in body]
        except ValueError as exc:
            raise DatasetError(f"{path}: label column must hold 0/1") from exc
        if set(labels) - {0, 1}:
            raise DatasetError(f"{path}: label column must hold 0/1")
        ground_truth = np.array(labels, dtype=bool)
    if not attr_idx:
        raise DatasetError(f"{path}: no attribute columns")

    if isinstance(schema, str):
        if schema != "infer":
            raise DatasetError(f"unknown schema mode {schema!r}")
        given = None
    else:
        given = list(schema)
        if len(given) != len(attr_idx):
            raise DatasetError(f"{path}: schema lists {len(given)} columns, file has {len(attr_idx)}")
        for attr, j in zip(given, attr_idx):
            if attr.name != header[j]:
                raise DatasetError(f"{path}: schema name {attr.name!r} != header {header[j]!r}")

    columns, out_schema = [], []
    for pos, j in enumerate(attr_idx):
        cells = [r[j].strip() for r in body]
        present = [c for c in cells if c not in MISSING_MARKERS]
        if given is None:
            numerical = bool(present) and all(_parse_real(c) is not None for c in present)
            kind = NUMERICAL if numerical else CATEGORICAL
        else:
            kind = given[pos].kind
        if kind == NUMERICAL:
            col = np.empty(len(cells))
            for i, c in enumerate(cells):
                if c in MISSING_MARKERS:
                    col[i] = np.nan
                    continue
                value = _parse_real(c)
                if value is None:
                    raise DatasetError(f"{path}: column {header[j]!r} has non-numeric cell {c!r}")
                col[i] = value
            columns.append(col)
            out_schema.append(AttributeSchema(header[j], NUMERICAL))
        else:
            codes, cats = _encode([None if c in MISSING_MARKERS else c for c in cells])
            columns.append(codes)
            out_schema.append(AttributeSchema(header[j], CATEGORICAL, categories=cats))
    name = os.path.splitext(os.path.basename(os.fspath(path)))[0]
    return Dataset(tuple(columns), tuple(out_schema), ground_truth, name=name)


def impute_missing(dataset: Dataset) -> Dataset:
    """Fill numerical gaps with the column median and give categorical gaps their own code."""
    columns, schema = [], []
    for col, attr in zip(dataset.columns, dataset.schema):
        if attr.is_numerical:
            missing = np.isnan(col)
            if missing.all():
                raise DatasetError(f"column {attr.name!r} is entirely missing")
            if missing.any():
                col = col.copy()
                col[missing] = np.median(col[~missing])
        else:
            missing = col == MISSING_CODE
            if missing.all():
                raise DatasetError(f"column {attr.name!r} is entirely missing")
            if missing.any():
                extra = len(attr.categories) if attr.categories else int(col.max()) + 1
                col = np.where(missing, extra, col)
                attr = replace(attr, categories=attr.categories + (MISSING_LABEL,))
        columns.append(col)
        schema.append(attr)
    return replace(dataset, columns=tuple(columns), schema=tuple(schema))


def normalize(dataset: Dataset) -> Dataset:
    """Min-max scale every numerical column into [0, 1]; constant columns become zeros."""
    columns, schema = [], []
    for col, attr in zip(dataset.columns, dataset.schema):
        if attr.is_numerical:
            if not np.all(np.isfinite(col)):
                raise DatasetError(f"column {attr.name!r} has non-finite values; impute first")
            lo, hi = float(col.min()), float(col.max())
            col = (col - lo) / (hi - lo) if hi > lo else np.zeros_like(col)
            if attr.original_min is None:
                attr = replace(attr, original_min=lo, original_max=hi)
        columns.append(col)
        schema.append(attr)
    return replace(dataset, columns=tuple(columns), schema=tuple(schema), normalized=True)


def prepare(dataset: Dataset) -> Dataset:
    """Impute then normalize: the preprocessing every detector run expects."""
    return normalize(impute_missing(dataset))


def draw_labeled_outliers(dataset: Dataset, count: int, seed: int) -> LabelState:
    """Sample ``count`` ground-truth outliers uniformly without replacement."""
    if dataset.ground_truth is None:
        raise DatasetError("dataset has no ground truth")
    if count < 1:
        raise DatasetError("count must be positive")
    outliers = dataset.outlier_indices()
    if count > outliers.size:
        raise DatasetError(f"count={count} exceeds the {outliers.size} available outliers")
    rng = np.random.default_rng(seed)
    chosen = rng.choice(outliers, size=count, replace=False)
    return LabelState(positives=np.sort(chosen), rng_seed=seed)
