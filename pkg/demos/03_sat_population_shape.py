"""MAX-3SAT: where does the population sit at the end of a run?

With random deletion the whole population crowds into the top few fitness
levels. FUDS spreads it across the levels it has reached.

Run: python demos/03_sat_population_shape.py  (about 15 s)
"""

from importlib.resources import files

from fuds import SchemeConfig, StopRule, run
from fuds.instances import load_instance
from fuds.problems import MaxSat

inst = load_instance(files("fuds") / "data" / "uf150-645-s0.cnf", "dimacs-cnf")
problem = MaxSat(inst)
print(inst)

for deletion in ("random", "fuds"):
    trace = run(problem, SchemeConfig(4, deletion), 1000, StopRule(stall_generations=40), seed=1)
    h = trace.histogram
    print(f"\nTOUR4-{deletion[0].upper()}: best {trace.best_fitness:.0f} clauses after {trace.generations:.0f} generations")
    for lo, hi, c in zip(h.edges, h.edges[1:], h.counts):
        if c:
            print(f"  [{lo:6.1f}, {hi:6.1f})  {c:4d}  {'#' * (c // 10)}")
