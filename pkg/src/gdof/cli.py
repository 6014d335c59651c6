"""Command-line entry point: ``gdof {detect,evaluate,sweep-negatives,oracle-check}``.

Relative ``--data``/``--schema`` paths that do not exist in the working
directory are looked up under ``$GDOF_DATA_DIR``. Exit codes: 0 success,
1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from gdof.dataset import DatasetError, draw_labeled_outliers
from gdof.experiment import DEFAULT_COUNTS, SWEEP_NEGATIVES, ExperimentConfig, run_experiment, sweep_negatives
from gdof.scoring import DetectConfig, detect

DATA_DIR_ENV = "GDOF_DATA_DIR"


def resolve_path(path: str | None) -> str | None:
    if path is None or os.path.isabs(path) or os.path.exists(path):
        return path
    base = os.environ.get(DATA_DIR_ENV)
    if base and os.path.exists(os.path.join(base, path)):
        return os.path.join(base, path)
    return path


def _int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("list must not be empty")
    return values


def _add_data_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--data", required=True, help="CSV file with a header row")
    p.add_argument("--schema", help="sidecar file of 'name,kind' lines")
    p.add_argument("--labels", default="label", help="ground-truth column (0 inlier, 1 outlier)")
    p.add_argument("--negatives", type=int, default=200, help="number of sampled inliers")
    p.add_argument("--grid-step", type=float, default=0.01, help="radius grid spacing")
    p.add_argument("--jobs", type=int, default=1, help="worker threads")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gdof", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="score one dataset from a few labeled outliers")
    _add_data_flags(p)
    p.add_argument("--outliers-known", type=int, default=5, help="labeled outliers to draw")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="JSON output with scores, threshold, outlier set")
    p.add_argument("--csv", help="optional per-object scores CSV")

    p = sub.add_parser("evaluate", help="repeated-trial AUC/AP evaluation")
    _add_data_flags(p)
    p.add_argument("--counts", type=_int_list, default=DEFAULT_COUNTS,
                   help="comma-separated labeled-outlier counts")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0, help="base seed; trial t uses seed + t")
    p.add_argument("--out", required=True, help="report JSON")

    p = sub.add_parser("sweep-negatives", help="evaluate across sampled-inlier counts")
    _add_data_flags(p)
    p.add_argument("--values", type=_int_list, default=SWEEP_NEGATIVES)
    p.add_argument("--counts", type=_int_list, default=(5,))
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="series JSON")

    p = sub.add_parser("oracle-check", help="compare against the brute-force reference")
    p.add_argument("--instances", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=float, default=1e-12)
    p.add_argument("--out", help="optional JSON summary")
    return parser


def _experiment_config(args, counts) -> ExperimentConfig:
    return ExperimentConfig(
        data_path=resolve_path(args.data), schema_path=resolve_path(args.schema),
        label_column=args.labels, labeled_outlier_counts=counts, n_negatives=args.negatives,
        trials=args.trials, base_seed=args.seed, grid_step=args.grid_step, n_jobs=args.jobs)


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")


def _run(args) -> int:
    if args.command == "detect":
        cfg = _experiment_config(argparse.Namespace(**{**vars(args), "trials": 1}),
                                 (args.outliers_known,))
        dataset = cfg.load_dataset()
        labels = draw_labeled_outliers(dataset, args.outliers_known, args.seed)
        report = detect(dataset, labels.positives,
                        DetectConfig(n_negatives=args.negatives, grid_step=args.grid_step,
                                     seed=args.seed, n_jobs=args.jobs))
        report.write_json(args.out)
        if args.csv:
            report.write_csv(args.csv)
        print(f"{report.scores.size} objects scored, {report.outlier_set.size} flagged "
              f"(threshold {report.threshold:.6f}) -> {args.out}")
    elif args.command == "evaluate":
        report = run_experiment(_experiment_config(args, args.counts))
        report.write_json(args.out)
        summary = report.to_dict()
        print(f"{report.dataset}: mean AUC {summary['mean_auc']:.4f}, "
              f"mean AP {summary['mean_ap']:.4f} over {len(report.per_trial)} trials -> {args.out}")
    elif args.command == "sweep-negatives":
        series = sweep_negatives(_experiment_config(args, args.counts), args.values)
        _write_json(args.out, series)
        for row in series["series"]:
            print(f"negatives={row['n_negatives']}: mean AUC {row['mean_auc']:.4f}")
    elif args.command == "oracle-check":
        from gdof.oracle import run_suite

        result = run_suite(args.instances, args.seed, args.tolerance)
        if args.out:
            _write_json(args.out, result)
        status = "passed" if result["passed"] else f"FAILED on {len(result['failures'])} instances"
        print(f"oracle check {status}: max abs error {result['max_abs_error']:.3e} "
              f"over {result['instances']} instances")
        return 0 if result["passed"] else 1
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except (DatasetError, ValueError, OSError) as exc:
        print(f"gdof {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
