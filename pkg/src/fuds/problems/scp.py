"""Weighted set covering problem.

Genomes are boolean column-selection vectors (numpy arrays). Every operator
ends with :func:`scp_repair`, so genomes reaching evaluation are feasible
covers without redundant columns.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from fuds.problems._bits import random_bits as _random_bits


class ScpInstance:
    """Set covering instance.

    Args:
        rows: For each row, the 0-based indices of the columns covering it.
        cost: Positive cost per column.
    """

    def __init__(self, rows: Sequence[Sequence[int]], cost: Sequence[float]):
        cost = np.array(cost, dtype=float)
        n = cost.size
        m = len(rows)
        if m < 1 or n < 1:
            raise ValueError("instance needs at least one row and one column")
        if np.any(cost <= 0) or not np.all(np.isfinite(cost)):
            raise ValueError("column costs must be positive")
        cover = np.zeros((m, n), dtype=bool)
        for i, cols in enumerate(rows):
            cols = list(cols)
            if not cols:
                raise ValueError(f"row {i} is not covered by any column")
            if min(cols) < 0 or max(cols) >= n:
                raise ValueError(f"row {i} references a column outside 0..{n - 1}")
            cover[i, cols] = True
        cost.setflags(write=False)
        cover.setflags(write=False)
        self.m_rows = m
        self.n_cols = n
        self.rows = tuple(tuple(sorted(set(r))) for r in rows)
        self.cost = cost
        self.cover = cover
        self._cover_i = cover.astype(np.int32)

    def __eq__(self, other):
        return (
            isinstance(other, ScpInstance)
            and self.rows == other.rows
            and np.array_equal(self.cost, other.cost)
        )

    def __repr__(self):
        return f"ScpInstance(m_rows={self.m_rows}, n_cols={self.n_cols})"

    def coverage(self, x) -> np.ndarray:
        """Number of selected columns covering each row."""
        return self._cover_i @ np.asarray(x, dtype=np.int32)

    def is_feasible(self, x) -> bool:
        return bool(np.all(self.coverage(x) >= 1))


def scp_repair(x, inst: ScpInstance) -> np.ndarray:
    """Make ``x`` a feasible cover, then strip redundant columns.

    Uncovered rows are fixed greedily by adding the column with the lowest
    cost per newly covered row (lowest index on ties). Selected columns are
    then visited from most to least expensive (higher index first on ties)
    and dropped when every row they cover is covered elsewhere.
    """
    x = np.array(x, dtype=bool)
    if x.shape != (inst.n_cols,):
        raise ValueError(f"expected {inst.n_cols} bits, got shape {x.shape}")
    counts = inst.coverage(x)
    cover = inst._cover_i
    uncovered = counts == 0
    while uncovered.any():
        gain = uncovered.astype(np.int32) @ cover
        with np.errstate(divide="ignore"):
            ratio = np.where(gain > 0, inst.cost / np.maximum(gain, 1), np.inf)
        j = int(np.argmin(ratio))
        if not np.isfinite(ratio[j]):
            raise ValueError("instance has a row no column can cover")
        x[j] = True
        counts += cover[:, j]
        uncovered = counts == 0

    order = sorted(np.flatnonzero(x), key=lambda j: (-inst.cost[j], -j))
    for j in order:
        col = inst.cover[:, j]
        if np.all(counts[col] >= 2):
            x[j] = False
            counts -= cover[:, j]
    return x


def scp_cost(x, inst: ScpInstance) -> float:
    return float(inst.cost[np.asarray(x, dtype=bool)].sum())


def scp_evaluate(x, inst: ScpInstance) -> float:
    x = np.asarray(x, dtype=bool)
    if not inst.is_feasible(x):
        raise ValueError("infeasible cover reached evaluation; repair must run first")
    return 1.0 / scp_cost(x, inst)


class SetCover:
    """Engine adapter: uniform crossover, single-bit flip, repair after each."""

    name = "scp"

    def __init__(self, inst: ScpInstance):
        self.inst = inst
        self.f_min = 1.0 / float(inst.cost.sum())
        self.f_max = 1.0 / float(inst.cost.min())
        if self.f_max <= self.f_min:
            self.f_max = self.f_min * (1 + 1e-9)

    def random_genome(self, rng):
        n = self.inst.n_cols
        return scp_repair(_random_bits(n, rng), self.inst)

    def evaluate(self, genome) -> float:
        return scp_evaluate(genome, self.inst)

    def mutate(self, genome, rng):
        x = np.array(genome, dtype=bool)
        j = int(rng.random() * x.size)
        x[j] = not x[j]
        return scp_repair(x, self.inst)

    def crossover(self, g1, g2, rng):
        mask = _random_bits(g1.size, rng)
        return scp_repair(np.where(mask, g1, g2), self.inst)

    def bits(self, genome):
        return genome

    def cost_of(self, genome) -> float:
        return scp_cost(genome, self.inst)
