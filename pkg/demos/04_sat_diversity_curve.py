"""MAX-3SAT: genome diversity as the best fitness climbs.

Diversity is the mean pairwise Hamming distance between assignments, taken
every 100 cycles. Curves from several runs are averaged at each best-fitness
value and cut where fewer than half the runs got that far.

Run: python demos/04_sat_diversity_curve.py  (about 2 minutes)
"""

from importlib.resources import files

from fuds import SchemeConfig, StopRule, diversity_vs_best_curve, run
from fuds.instances import load_instance
from fuds.problems import MaxSat

problem = MaxSat(load_instance(files("fuds") / "data" / "uf150-645-s0.cnf", "dimacs-cnf"))
stop = StopRule(stall_generations=40)

curves = {}
for deletion in ("random", "fuds"):
    traces = [run(problem, SchemeConfig(3, deletion), 1000, stop, seed=s) for s in range(5)]
    curves[deletion] = (dict(diversity_vs_best_curve(traces, "total")), dict(diversity_vs_best_curve(traces, "top")))

# print every fifth common checkpoint
common = sorted(set(curves["random"][0]) & set(curves["fuds"][0]))
print("best   total R  total F   top R   top F")
for v in common[::5]:
    (tr, pr), (tf, pf) = curves["random"], curves["fuds"]
    fmt = lambda x: f"{x:7.1f}" if x is not None else "      -"
    print(f"{v:4.0f}  {fmt(tr[v])}  {fmt(tf[v])}  {fmt(pr.get(v))}  {fmt(pf.get(v))}")
