"""Deceptive 2D: how long does it take to find the tiny optimal square?

Fitness is 3 almost everywhere, 1 or 2 on two thin strips, and 4 where the
strips cross. Climbing from 3 to 4 means first accepting a worse point on a
strip. Random deletion soon loses those points; FUDS keeps them because they
sit in sparsely populated fitness levels.

Run: python demos/01_deceptive_2d.py  (about a minute)
"""

import numpy as np

from fuds import SchemeConfig, StopRule, run
from fuds.problems import Deceptive2D, Deceptive2DInstance

delta = 0.1
problem = Deceptive2D(Deceptive2DInstance(a=0.45, b=0.45, delta=delta))

# start from 10 random points and grow to 1000, as in the original setup
stop = StopRule(max_generations=2000, target_fitness=problem.optimum)

for k in (2, 3):
    for deletion in ("random", "fuds"):
        scheme = SchemeConfig(tournament_size=k, deletion=deletion, crossover_prob=0.25)
        gens = [run(problem, scheme, 1000, stop, seed=s, initial_size=10).generations for s in range(10)]
        print(f"{scheme.name:8s} delta={delta}: mean {np.mean(gens):7.1f} generations, worst {max(gens):7.1f}")

# What does the population look like when the optimum is found? Count the
# members on the strips (fitness 1 or 2) right at the end of one FUDS run.
trace = run(problem, SchemeConfig(2, "fuds", 0.25), 1000, stop, seed=0, initial_size=10)
values, counts = np.unique(trace.final_fitnesses, return_counts=True)
print("final population by fitness:", dict(zip(values.tolist(), counts.tolist())))
