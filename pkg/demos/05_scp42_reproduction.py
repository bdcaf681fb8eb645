"""Set covering on an scp42-sized instance. Not part of the test suite.

Uses scp42.txt from the OR-Library if scripts/fetch_corpora.py has put it in
corpora/, otherwise the bundled random stand-in of the same shape. The
operators (uniform crossover, one-bit flip, greedy repair) stand in for the
original ones, so absolute costs are not comparable with published numbers.

Run: python demos/05_scp42_reproduction.py [runs]  (several minutes)
"""

import sys
from importlib.resources import files
from pathlib import Path

from fuds import SchemeConfig, StopRule, aggregate, run
from fuds.instances import load_instance
from fuds.problems import SetCover

real = Path(__file__).resolve().parents[1] / "corpora" / "scp42.txt"
path = real if real.exists() else files("fuds") / "data" / "scp42-like.txt"
problem = SetCover(load_instance(path, "orlib-scp"))
print("instance:", path.name, problem.inst)

runs = int(sys.argv[1]) if len(sys.argv) > 1 else 3
for k in (2, 4):
    for deletion in ("random", "fuds"):
        scheme = SchemeConfig(k, deletion)
        costs = [problem.cost_of(run(problem, scheme, 200, StopRule(stall_generations=20), seed=s).best_genome)
                 for s in range(runs)]
        line = f"{scheme.name}: best cost per run {costs}"
        if runs > 1:
            s = aggregate(costs)
            line += f", mean {s.mean:.1f} +- {s.ci95:.1f}"
        print(line)
