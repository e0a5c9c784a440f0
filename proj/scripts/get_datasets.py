#!/usr/bin/env python3
"""Materialize the benchmark datasets used by the test suite.

iris.csv comes from scikit-learn's bundled copy (no network needed).
seeds.csv is downloaded from the UCI repository and therefore needs
network access; when the download fails the script says so and the
corresponding checks report the file as missing.
"""

import argparse
import csv
import sys
import urllib.request
from pathlib import Path

SEEDS_URL = "https://archive.ics.uci.edu/ml/machine-learning-databases/00236/seeds_dataset.txt"


def write_iris(out_dir: Path) -> None:
    from sklearn.datasets import load_iris

    data = load_iris()
    path = out_dir / "iris.csv"
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"f{i}" for i in range(data.data.shape[1])] + ["label"])
        for row, label in zip(data.data, data.target):
            writer.writerow([repr(float(v)) for v in row] + [int(label)])
    print(f"wrote {path} ({data.data.shape[0]} rows)")


def write_seeds(out_dir: Path, timeout: float) -> bool:
    path = out_dir / "seeds.csv"
    try:
        with urllib.request.urlopen(SEEDS_URL, timeout=timeout) as resp:
            raw = resp.read().decode("utf-8")
    except Exception as exc:  # noqa: BLE001 - report any fetch failure
        print(f"could not fetch seeds dataset ({exc}); {path} not written", file=sys.stderr)
        return False
    rows = []
    for line in raw.splitlines():
        cells = line.split()
        if not cells:
            continue
        if len(cells) != 8:
            raise ValueError(f"unexpected seeds row: {line!r}")
        rows.append(cells[:7] + [str(int(float(cells[7])) - 1)])
    if len(rows) != 210:
        raise ValueError(f"expected 210 seeds rows, got {len(rows)}")
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"f{i}" for i in range(7)] + ["label"])
        writer.writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")
    return True


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", type=Path, default=Path("data"))
    parser.add_argument("--skip-seeds", action="store_true", help="do not attempt the download")
    parser.add_argument("--timeout", type=float, default=15.0)
    args = parser.parse_args()

    args.out_dir.mkdir(parents=True, exist_ok=True)
    write_iris(args.out_dir)
    if not args.skip_seeds:
        write_seeds(args.out_dir, args.timeout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
