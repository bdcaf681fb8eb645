"""MAX-3SAT: maximise the number of satisfied clauses.

Genomes are boolean numpy arrays with one entry per variable.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from fuds.problems._bits import random_bits


class Cnf3Instance:
    """CNF formula with clauses of at most three literals.

    Literals are nonzero integers; ``v`` means variable ``v`` is true and
    ``-v`` means it is false, with variables numbered from 1.
    """

    def __init__(self, n_vars: int, clauses: Sequence[Sequence[int]]):
        if n_vars < 1:
            raise ValueError(f"n_vars must be positive, got {n_vars}")
        cls = tuple(tuple(int(l) for l in c) for c in clauses)
        for i, c in enumerate(cls):
            if not c:
                raise ValueError(f"clause {i} is empty")
            if len(c) > 3:
                raise ValueError(f"clause {i} has {len(c)} literals, at most 3 allowed")
            for lit in c:
                if lit == 0 or abs(lit) > n_vars:
                    raise ValueError(f"clause {i} has literal {lit} outside +-1..{n_vars}")
        self.n_vars = n_vars
        self.clauses = cls
        # clauses shorter than 3 literals are legal DIMACS but not strictly 3-CNF
        self.short_clauses = sum(1 for c in cls if len(c) < 3)
        # pad short clauses by repeating their first literal; satisfaction is unchanged
        padded = [list(c) + [c[0]] * (3 - len(c)) for c in cls]
        lits = np.array(padded, dtype=np.int64).reshape(len(cls), 3)
        self._var = np.abs(lits) - 1
        self._neg = lits < 0

    @property
    def n_clauses(self) -> int:
        return len(self.clauses)

    def __eq__(self, other):
        return isinstance(other, Cnf3Instance) and (self.n_vars, self.clauses) == (
            other.n_vars,
            other.clauses,
        )

    def __repr__(self):
        return f"Cnf3Instance(n_vars={self.n_vars}, n_clauses={self.n_clauses})"


def sat_evaluate(assignment, inst: Cnf3Instance) -> int:
    a = np.asarray(assignment, dtype=bool)
    if a.shape != (inst.n_vars,):
        raise ValueError(f"assignment must have {inst.n_vars} entries, got shape {a.shape}")
    return int((a[inst._var] != inst._neg).any(axis=1).sum())


class MaxSat:
    """Engine adapter: one-variable flip mutation, uniform crossover."""

    name = "sat"

    def __init__(self, inst: Cnf3Instance):
        self.inst = inst
        self.f_min = 0.0
        self.f_max = float(inst.n_clauses)
        self._var = inst._var
        self._neg = inst._neg

    def random_genome(self, rng):
        return random_bits(self.inst.n_vars, rng)

    def evaluate(self, genome) -> int:
        return int((genome[self._var] != self._neg).any(axis=1).sum())

    def mutate(self, genome, rng):
        g = genome.copy()
        j = int(rng.random() * g.size)
        g[j] = not g[j]
        return g

    def crossover(self, g1, g2, rng):
        return np.where(random_bits(g1.size, rng), g1, g2)

    def bits(self, genome):
        return genome
