"""Driving a sweep from a config file, the way the command line does.

The same file works with ``fuds run demos/tsp_small.cfg --out results.csv``.
This script calls the library directly and prints the aggregate rows.

Run: python demos/06_config_and_cli.py  (about 30 s)
"""

import csv
import io
from pathlib import Path

from fuds.bench import parse_config, run_experiment

cfg = parse_config((Path(__file__).parent / "tsp_small.cfg").read_text())
print(f"{len(cfg.cells())} cells x {cfg.repetitions} runs")

result = run_experiment(cfg)
for row in csv.DictReader(io.StringIO(result.to_csv())):
    if row["kind"] == "aggregate":
        print(f"{row['cell']:16s} mean tour {float(row['mean']):.3f} +- {float(row['ci95']):.3f}")
