"""Random-distance TSP: tour length against tournament size.

Distances are uniform on [0, 1] with no triangle inequality. Each run gets
its own 20-city instance; random deletion and FUDS see the same instances
and seeds, so the comparison is paired.

Run: python demos/02_tsp_tournament_sweep.py  (a few minutes)
"""

from fuds import SchemeConfig, StopRule, aggregate, run
from fuds.instances import gen_random_tsp
from fuds.problems import Tsp

RUNS = 10
stop = StopRule(stall_generations=40)
problems = [Tsp(gen_random_tsp(20, 1000 + i)) for i in range(RUNS)]

print("size   random deletion      FUDS")
for k in (3, 6, 12):
    row = []
    for deletion in ("random", "fuds"):
        lengths = [p.tour_length(run(p, SchemeConfig(k, deletion), 250, stop, seed=i).best_genome)
                   for i, p in enumerate(problems)]
        s = aggregate(lengths)
        row.append(f"{s.mean:.3f} +- {s.ci95:.3f}")
    print(f"{k:4d}   {row[0]:18s}   {row[1]}")

# The level table needs fitness bounds. For TSP they come from the instance:
# no tour is longer than n (every edge <= 1) or shorter than the n cheapest
# edges together. Most tours live near the bottom of that range.
p = problems[0]
print(f"fitness bounds for instance 0: [{p.f_min:.3f}, {p.f_max:.3f}]"
      f" i.e. tour lengths {1 / p.f_max:.2f} .. {1 / p.f_min:.0f}")
