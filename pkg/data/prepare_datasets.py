"""Build the benchmark CSV files in this directory from PyPI-distributed copies.

Every source below is a file shipped inside a package on PyPI, so the script
only needs ``pip download`` access:

* ``breastw.csv``   -- R MASS ``biopsy`` table (via the ``rdatasets`` wheel);
  rows with a missing ``V6`` are dropped, malignant = outlier.
* ``musk.csv``      -- UCI Musk v2 (via the ``mil`` wheel). Inliers are the
  non-musk molecules j146, j147 and 252; outliers are musk molecules 211 and
  213 (bags 90, 91, 55 and 1, 3 in the ``mil`` encoding).
* ``mushroom2.csv`` -- KEEL mushroom (via the ``keel_ds`` wheel); all edible
  rows plus 573 poisonous rows drawn with a fixed seed.
* ``audiology.csv`` -- UCI audiology.standardized (via the Orange3 3.4.0
  sdist); class ``cochlear_age`` = outlier.

Usage::

    python data/prepare_datasets.py [--cache /tmp/gdof-sources]
"""

from __future__ import annotations

import argparse
import csv
import io
import pathlib
import subprocess
import sys
import tarfile
import zipfile

import numpy as np

HERE = pathlib.Path(__file__).resolve().parent

SOURCES = {
    "rdatasets": "rdatasets==0.2.10",
    "mil": "mil==1.0.5",
    "keel_ds": "keel_ds==0.2.5",
    "orange3": "orange3==3.4.0",
}

MUSK_INLIER_BAGS = {55, 90, 91}
MUSK_OUTLIER_BAGS = {1, 3}
MUSHROOM_OUTLIERS = 573
MUSHROOM_SEED = 0
MUSHROOM_ATTRIBUTES = [
    "cap-shape", "cap-surface", "cap-color", "bruises", "odor",
    "gill-attachment", "gill-spacing", "gill-size", "gill-color",
    "stalk-shape", "stalk-root", "stalk-surface-above-ring",
    "stalk-surface-below-ring", "stalk-color-above-ring",
    "stalk-color-below-ring", "veil-type", "veil-color", "ring-number",
    "ring-type", "spore-print-color", "population", "habitat",
]


def fetch(name: str, cache: pathlib.Path) -> pathlib.Path:
    target = cache / name
    files = list(target.glob("*")) if target.exists() else []
    if not files:
        target.mkdir(parents=True, exist_ok=True)
        cmd = [sys.executable, "-m", "pip", "download", "--no-deps", "-q",
               "-d", str(target), SOURCES[name]]
        if name == "orange3":
            cmd.insert(5, "--no-binary=:all:")
        subprocess.run(cmd, check=True)
        files = list(target.glob("*"))
    return files[0]


def read_member(archive: pathlib.Path, suffix: str) -> bytes:
    if archive.suffix == ".whl":
        with zipfile.ZipFile(archive) as zf:
            name = next(n for n in zf.namelist() if n.endswith(suffix))
            return zf.read(name)
    with tarfile.open(archive) as tf:
        name = next(n for n in tf.getnames() if n.endswith(suffix))
        return tf.extractfile(name).read()


def write_csv(path: pathlib.Path, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {path.name}: {len(rows)} rows")


def build_breastw(cache):
    import pandas as pd  # only needed to unpickle the rdatasets frame

    raw = read_member(fetch("rdatasets", cache), "MASS/biopsy.pkl.compress")
    frame = pd.read_pickle(io.BytesIO(raw), compression="xz")
    frame = frame.dropna()
    feats = [f"V{k}" for k in range(1, 10)]
    rows = [[int(v) for v in rec[feats]] + [int(rec["class"] == "malignant")]
            for _, rec in frame.iterrows()]
    write_csv(HERE / "breastw.csv", feats + ["label"], rows)


def build_musk(cache):
    text = read_member(fetch("mil", cache), "csv/musk2.csv").decode()
    rows = []
    for line in text.splitlines():
        if not line.strip():
            continue
        fields = line.split(",")
        bag = int(fields[1])
        if bag in MUSK_INLIER_BAGS:
            label = 0
        elif bag in MUSK_OUTLIER_BAGS:
            label = 1
        else:
            continue
        rows.append([int(float(v)) for v in fields[2:]] + [label])
    header = [f"f{k}" for k in range(1, len(rows[0]))] + ["label"]
    write_csv(HERE / "musk.csv", header, rows)


def build_mushroom2(cache):
    text = read_member(fetch("keel_ds", cache), "balanced/raw/mushroom.dat").decode()
    # headerless: 22 attributes then the class (e/p)
    records = [[v.strip() for v in line.split(",")]
               for line in text.splitlines() if line.strip() and not line.startswith("@")]
    edible = [r for r in records if r[-1] == "e"]
    poisonous = [r for r in records if r[-1] == "p"]
    rng = np.random.default_rng(MUSHROOM_SEED)
    keep = np.sort(rng.choice(len(poisonous), size=MUSHROOM_OUTLIERS, replace=False))
    rows = [r[:-1] + [0] for r in edible] + [poisonous[i][:-1] + [1] for i in keep]
    header = MUSHROOM_ATTRIBUTES + ["label"]
    write_csv(HERE / "mushroom2.csv", header, rows)


def build_audiology(cache):
    text = read_member(fetch("orange3", cache), "datasets/audiology.tab").decode()
    lines = text.split("\n")
    header = lines[0].rstrip("\n").split("\t")
    rows = []
    for line in lines[3:]:
        if not line.strip():
            continue
        fields = [v.strip() for v in line.split("\t")]
        rows.append(fields[:-1] + [int(fields[-1] == "cochlear_age")])
    write_csv(HERE / "audiology.csv", header[:-1] + ["label"], rows)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--cache", type=pathlib.Path,
                        default=pathlib.Path("/tmp/gdof-sources"))
    args = parser.parse_args(argv)
    args.cache.mkdir(parents=True, exist_ok=True)
    build_breastw(args.cache)
    build_musk(args.cache)
    build_mushroom2(args.cache)
    build_audiology(args.cache)


if __name__ == "__main__":
    main()
