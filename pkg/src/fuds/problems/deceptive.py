"""Deceptive problem on the unit square.

Two thin strips, a vertical one ``[a, a+delta] x [0, 1]`` and a horizontal one
``[0, 1] x [b, b+delta]``, split the square into four fitness regions:

    4  inside both strips (global optimum, area delta**2)
    3  outside both strips (local optimum, most of the area)
    2  horizontal strip only
    1  vertical strip only

Reaching the optimum from the fitness-3 plateau requires passing through the
lower-fitness strips.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Deceptive2DInstance:
    a: float
    b: float
    delta: float

    def __post_init__(self):
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must be in (0, 1), got {self.delta}")
        for name in ("a", "b"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0 - self.delta:
                raise ValueError(f"{name} must be in [0, 1 - delta], got {v}")


def deceptive2d_evaluate(x: float, y: float, inst: Deceptive2DInstance) -> int:
    in_v = inst.a <= x <= inst.a + inst.delta
    in_h = inst.b <= y <= inst.b + inst.delta
    if in_v and in_h:
        return 4
    if in_h:
        return 2
    if in_v:
        return 1
    return 3


class Deceptive2D:
    """Engine adapter; genomes are ``(x, y)`` tuples."""

    name = "deceptive2d"
    f_min = 1.0
    f_max = 4.0
    optimum = 4.0

    def __init__(self, inst: Deceptive2DInstance):
        self.inst = inst

    def random_genome(self, rng):
        return (rng.random(), rng.random())

    def evaluate(self, genome) -> int:
        return deceptive2d_evaluate(genome[0], genome[1], self.inst)

    def mutate(self, genome, rng):
        # redraw one coordinate
        if rng.random() < 0.5:
            return (rng.random(), genome[1])
        return (genome[0], rng.random())

    def crossover(self, g1, g2, rng):
        return (g1[0], g2[1])
