import os
from pathlib import Path

import numpy as np
import pytest

from gdof.dataset import CATEGORICAL, NUMERICAL, Attribute, AttributeSchema, Dataset

DATA_DIR = Path(os.environ.get("GDOF_DATA_DIR", Path(__file__).resolve().parents[1] / "data"))


def numeric_attr(values) -> Attribute:
    return Attribute(np.asarray(values, dtype=np.float64), NUMERICAL)


def categorical_attr(codes) -> Attribute:
    return Attribute(np.asarray(codes, dtype=np.int64), CATEGORICAL)


def toy_dataset(*columns, kinds=None, ground_truth=None) -> Dataset:
    """Dataset over columns that are already in normalized form."""
    kinds = kinds or [NUMERICAL] * len(columns)
    schema = tuple(AttributeSchema(f"a{k}", kind) for k, kind in enumerate(kinds))
    return Dataset(tuple(columns), schema, ground_truth, normalized=True)


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


ACCEPTANCE_LINES: list[str] = []


def report_criterion(number: int, label: str, passed: bool, detail: str) -> None:
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:2d} {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
