"""Label-informed outlier detection with fuzzy information granules.

A handful of known outliers steer three choices: which objects are sampled as
likely inliers, the fuzzy radius used on each numerical attribute, and how much
each attribute contributes to the final outlier factor.
"""

from gdof.dataset import (
    Dataset,
    DatasetError,
    LabelState,
    draw_labeled_outliers,
    impute_missing,
    load_csv,
    normalize,
    prepare,
    read_schema_file,
)
from gdof.density import DensityMatrix, attribute_densities, density_matrix
from gdof.experiment import ExperimentConfig, ExperimentReport, TrialResult, run_experiment, sweep_negatives
from gdof.granulation import optimize_radius, radius_grid, relation_row
from gdof.metrics import auc, average_precision
from gdof.sampling import sample_negatives, sampling_distribution
from gdof.scoring import DetectConfig, ScoreReport, detect

__all__ = [
    "Dataset", "DatasetError", "LabelState", "draw_labeled_outliers", "impute_missing",
    "load_csv", "normalize", "prepare", "read_schema_file",
    "DensityMatrix", "attribute_densities", "density_matrix",
    "ExperimentConfig", "ExperimentReport", "TrialResult", "run_experiment", "sweep_negatives",
    "optimize_radius", "radius_grid", "relation_row",
    "auc", "average_precision",
    "sample_negatives", "sampling_distribution",
    "DetectConfig", "ScoreReport", "detect",
]
__version__ = "0.1.0"
