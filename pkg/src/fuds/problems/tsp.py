"""Random-distance travelling salesman problem.

Genomes are tuples holding a permutation of the city indices; fitness is the
reciprocal of the closed tour length.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np


class TspInstance:
    """Symmetric distance matrix with zero diagonal and entries in [0, 1]."""

    def __init__(self, dist):
        d = np.array(dist, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError(f"distance matrix must be square, got shape {d.shape}")
        if d.shape[0] < 2:
            raise ValueError("need at least 2 cities")
        if not np.array_equal(d, d.T):
            raise ValueError("distance matrix is not symmetric")
        if np.any(np.diag(d) != 0.0):
            raise ValueError("distance matrix has a nonzero diagonal")
        if np.any(d < 0.0) or np.any(d > 1.0) or not np.all(np.isfinite(d)):
            raise ValueError("distances must lie in [0, 1]")
        d.setflags(write=False)
        self.dist = d
        self.n_cities = d.shape[0]
        # nested lists index faster than numpy for scalar lookups
        self._rows = d.tolist()
        self._cities = frozenset(range(self.n_cities))

    def __eq__(self, other):
        return isinstance(other, TspInstance) and np.array_equal(self.dist, other.dist)

    def __repr__(self):
        return f"TspInstance(n_cities={self.n_cities})"


def _check_tour(tour: Sequence[int], inst: TspInstance) -> None:
    if len(tour) != inst.n_cities or set(tour) != inst._cities:
        raise ValueError(f"genome is not a permutation of 0..{inst.n_cities - 1}: {tour!r}")


def tsp_length(tour: Sequence[int], inst: TspInstance) -> float:
    _check_tour(tour, inst)
    rows = inst._rows
    total = rows[tour[-1]][tour[0]]
    prev = tour[0]
    for c in tour[1:]:
        total += rows[prev][c]
        prev = c
    return total


def tsp_evaluate(tour: Sequence[int], inst: TspInstance) -> float:
    return 1.0 / tsp_length(tour, inst)


def swap_mutation(tour: Sequence[int], rng) -> tuple:
    n = len(tour)
    i = int(rng.random() * n)
    j = int(rng.random() * (n - 1))
    if j >= i:
        j += 1
    t = list(tour)
    t[i], t[j] = t[j], t[i]
    return tuple(t)


def random_cuts(n: int, rng) -> tuple[int, int]:
    """Uniform pair ``cut1 < cut2`` from ``0..n``."""
    a = int(rng.random() * (n + 1))
    b = int(rng.random() * n)
    if b >= a:
        b += 1
    return (a, b) if a < b else (b, a)


def pmx_crossover(
    p1: Sequence[int],
    p2: Sequence[int],
    cut1: Optional[int] = None,
    cut2: Optional[int] = None,
    rng=None,
) -> tuple:
    """Partially mapped crossover.

    Positions ``[cut1, cut2)`` are copied from ``p1``. Every other position
    takes ``p2``'s value; when that value already sits in the copied segment
    it is replaced by following the segment mapping ``p1[i] -> p2[i]`` until
    a value outside the segment is reached. Cuts are drawn from ``rng`` when
    not given.
    """
    n = len(p1)
    if len(p2) != n:
        raise ValueError(f"parent lengths differ: {n} vs {len(p2)}")
    if cut1 is None or cut2 is None:
        if rng is None:
            raise ValueError("need explicit cuts or an rng")
        cut1, cut2 = random_cuts(n, rng)
    if not 0 <= cut1 < cut2 <= n:
        raise ValueError(f"need 0 <= cut1 < cut2 <= {n}, got {cut1}, {cut2}")
    child = list(p2)
    segment = p1[cut1:cut2]
    mapping = dict(zip(segment, p2[cut1:cut2]))
    child[cut1:cut2] = segment
    for i in range(n):
        if cut1 <= i < cut2:
            continue
        v = p2[i]
        while v in mapping:
            v = mapping[v]
        child[i] = v
    return tuple(child)


class Tsp:
    """Engine adapter for a :class:`TspInstance`.

    Fitness bounds: every edge is at most 1, so ``1/n`` is a floor; no tour
    is shorter than the sum of the ``n`` shortest distinct edges, which gives
    the ceiling.
    """

    name = "tsp"

    def __init__(self, inst: TspInstance):
        self.inst = inst
        n = inst.n_cities
        edges = np.sort(inst.dist[np.triu_indices(n, 1)])
        lower = float(edges[:n].sum()) if edges.size >= n else float(edges.sum()) * 2
        self.f_min = 1.0 / n
        self.f_max = 1.0 / lower if lower > 0 else 1e12
        if self.f_max <= self.f_min:
            # every tour has the same length
            self.f_max = self.f_min * (1 + 1e-9)

    def random_genome(self, rng):
        t = list(range(self.inst.n_cities))
        rng.shuffle(t)
        return tuple(t)

    def evaluate(self, genome) -> float:
        return tsp_evaluate(genome, self.inst)

    def mutate(self, genome, rng):
        return swap_mutation(genome, rng)

    def crossover(self, g1, g2, rng):
        return pmx_crossover(g1, g2, rng=rng)

    def tour_length(self, genome) -> float:
        return tsp_length(genome, self.inst)
