"""Benchmark problems: deceptive 2D, random-distance TSP, set covering, MAX-3SAT.

Every problem object exposes the same small surface used by the engine::

    name, f_min, f_max
    random_genome(rng) -> genome
    evaluate(genome) -> float
    mutate(genome, rng) -> genome        # returns a new genome
    crossover(g1, g2, rng) -> genome

Problems with bit-vector genomes also expose ``bits(genome)`` so the engine
can sample Hamming diversity. ``rng`` is a :class:`random.Random`.
"""

from fuds.problems.deceptive import Deceptive2D, Deceptive2DInstance, deceptive2d_evaluate
from fuds.problems.sat import Cnf3Instance, MaxSat, sat_evaluate
from fuds.problems.scp import ScpInstance, SetCover, scp_cost, scp_evaluate, scp_repair
from fuds.problems.tsp import Tsp, TspInstance, pmx_crossover, swap_mutation, tsp_evaluate, tsp_length

__all__ = [
    "Cnf3Instance",
    "Deceptive2D",
    "Deceptive2DInstance",
    "MaxSat",
    "ScpInstance",
    "SetCover",
    "Tsp",
    "TspInstance",
    "deceptive2d_evaluate",
    "pmx_crossover",
    "sat_evaluate",
    "scp_cost",
    "scp_evaluate",
    "scp_repair",
    "swap_mutation",
    "tsp_evaluate",
    "tsp_length",
]
