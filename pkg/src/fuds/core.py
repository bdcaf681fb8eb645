"""Steady-state evolutionary engine with random deletion and FUDS.

The engine keeps one population of fixed capacity. Each cycle creates a
single child, deletes one existing member (once the population is full) and
inserts the child in the freed slot. Every population carries a
:class:`LevelTable` that buckets members by fitness, which is what the
Fitness Uniform Deletion Scheme (FUDS) deletes from and what the histogram
outputs are read from.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import islice
from typing import Any, Callable, Optional

from fuds.metrics import (
    DiversitySample,
    RunTrace,
    avg_pairwise_hamming,
    population_histogram,
    top_band_diversity,
)

__all__ = [
    "ConfigError",
    "Individual",
    "LevelTable",
    "Population",
    "SchemeConfig",
    "StopRule",
    "StepRecord",
    "default_level_count",
    "fuds_delete",
    "generations_of",
    "level_index",
    "random_delete",
    "run",
    "steady_state_step",
    "tournament_select",
]


class ConfigError(ValueError):
    """Invalid engine configuration, raised before any cycle runs."""


@dataclass(slots=True)
class Individual:
    genome: Any
    fitness: float
    level: int = 0
    birth: int = 0


class LevelTable:
    """Occupancy index of the population over equal-width fitness levels.

    ``levels[i]`` maps member identifiers to ``None``; dicts keep insertion
    order, so the members of a level are ordered by the time they entered it.
    ``counts`` mirrors the level sizes.
    """

    __slots__ = ("f_min", "f_max", "level_count", "levels", "counts", "clamped")

    def __init__(self, f_min: float, f_max: float, level_count: int):
        if not f_min < f_max:
            raise ConfigError(f"need f_min < f_max, got [{f_min}, {f_max}]")
        if level_count < 1:
            raise ConfigError(f"level_count must be >= 1, got {level_count}")
        self.f_min = float(f_min)
        self.f_max = float(f_max)
        self.level_count = int(level_count)
        self.levels: list[dict[int, None]] = [{} for _ in range(self.level_count)]
        self.counts = [0] * self.level_count
        # fitnesses seen outside [f_min, f_max] over the table's lifetime
        self.clamped = 0

    @property
    def width(self) -> float:
        return (self.f_max - self.f_min) / self.level_count

    @property
    def occupancy(self) -> list[int]:
        return list(self.counts)

    def __len__(self) -> int:
        return sum(self.counts)

    def edges(self) -> list[float]:
        """Level boundaries in fitness units, ``level_count + 1`` values."""
        w = self.width
        return [self.f_min + i * w for i in range(self.level_count)] + [self.f_max]

    def insert(self, ident: int, fitness: float) -> int:
        level = level_index(fitness, self)
        self.levels[level][ident] = None
        self.counts[level] += 1
        return level

    def remove(self, ident: int, level: int) -> None:
        del self.levels[level][ident]
        self.counts[level] -= 1

    def fullest(self) -> int:
        """Index of the most populated level, lowest index on ties."""
        counts = self.counts
        return counts.index(max(counts))


def level_index(f: float, table: LevelTable) -> int:
    """Fitness level of ``f``; the top level is closed at ``f_max``.

    Values outside ``[f_min, f_max]`` are clamped to the nearest bound and
    counted on ``table.clamped``.
    """
    lo, hi, n = table.f_min, table.f_max, table.level_count
    if f < lo:
        table.clamped += 1
        return 0
    if f > hi:
        table.clamped += 1
        return n - 1
    i = int((f - lo) * n / (hi - lo))
    return i if i < n else n - 1


def default_level_count(capacity: int) -> int:
    return max(1, round(math.sqrt(capacity)))


class Population:
    """Fixed-capacity population with a fitness level table.

    Member identifiers are slot indices into :attr:`members`. The engine
    always pairs :meth:`remove` with an :meth:`add`, so the child takes the
    slot just freed and the slots stay contiguous.
    """

    def __init__(self, capacity: int, table: LevelTable):
        if capacity < 1:
            raise ConfigError(f"capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self.table = table
        self.members: list[Optional[Individual]] = []
        self.size = 0
        self.births = 0
        self._free: list[int] = []

    def __len__(self) -> int:
        return self.size

    def __getitem__(self, ident: int) -> Individual:
        ind = self.members[ident]
        if ind is None:
            raise KeyError(ident)
        return ind

    def ids(self) -> list[int]:
        return [i for i, m in enumerate(self.members) if m is not None]

    def individuals(self) -> list[Individual]:
        return [m for m in self.members if m is not None]

    def add(self, genome: Any, fitness: float) -> int:
        if self.size >= self.capacity:
            raise OverflowError("population is at capacity")
        level = level_index(fitness, self.table)
        ind = Individual(genome, fitness, level, self.births)
        self.births += 1
        self.size += 1
        if self._free:
            ident = self._free.pop()
            self.members[ident] = ind
        else:
            ident = len(self.members)
            self.members.append(ind)
        self.table.levels[level][ident] = None
        self.table.counts[level] += 1
        return ident

    def remove(self, ident: int) -> Individual:
        ind = self[ident]
        self.table.remove(ident, ind.level)
        self.members[ident] = None
        self._free.append(ident)
        self.size -= 1
        return ind


def _below(rng: random.Random, n: int) -> int:
    # floor(n * U) with a 53-bit U; bias is far below anything measurable here
    return int(rng.random() * n)


def _pick_slot(pop: Population, rng: random.Random) -> int:
    if not pop._free:
        return _below(rng, len(pop.members))
    live = pop.ids()
    return live[_below(rng, len(live))]


def fuds_delete(pop: Population, rng: random.Random) -> int:
    """Pick a deletion victim uniformly from the most populated fitness level.

    Ties between equally populated levels go to the lowest level.
    """
    if len(pop) == 0:
        raise IndexError("cannot delete from an empty population")
    level = pop.table.levels[pop.table.fullest()]
    j = _below(rng, len(level))
    return next(islice(level, j, None))


def random_delete(pop: Population, rng: random.Random) -> int:
    if len(pop) == 0:
        raise IndexError("cannot delete from an empty population")
    return _pick_slot(pop, rng)


def tournament_select(pop: Population, k: int, rng: random.Random) -> int:
    """Draw ``k`` members with replacement and return the fittest.

    Entrants tied on the best fitness win with equal probability.
    """
    if pop.size == 0:
        raise IndexError("cannot select from an empty population")
    if k < 1:
        raise ValueError(f"tournament size must be >= 1, got {k}")
    members = pop.members
    if pop._free:
        live = pop.ids()
        slots, n = live, len(live)
    else:
        slots, n = None, len(members)
    rand = rng.random
    best = int(rand() * n)
    if slots is not None:
        best = slots[best]
    best_f = members[best].fitness
    ties = 1
    for _ in range(k - 1):
        c = int(rand() * n)
        if slots is not None:
            c = slots[c]
        f = members[c].fitness
        if f > best_f:
            best, best_f, ties = c, f, 1
        elif f == best_f:
            ties += 1
            if int(rand() * ties) == 0:
                best = c
    return best


@dataclass(frozen=True)
class SchemeConfig:
    """Selection and deletion settings for one run.

    ``tournament_size=None`` means uniform random selection (RAND), which is
    the same distribution as a tournament of size 1.
    """

    tournament_size: Optional[int] = 2
    deletion: str = "fuds"
    crossover_prob: float = 0.5
    mutation_prob: float = 0.5

    def __post_init__(self):
        if self.tournament_size is not None and self.tournament_size < 1:
            raise ConfigError(f"tournament size must be >= 1, got {self.tournament_size}")
        if self.deletion not in ("random", "fuds"):
            raise ConfigError(f"deletion must be 'random' or 'fuds', got {self.deletion!r}")
        for name in ("crossover_prob", "mutation_prob"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ConfigError(f"{name} must be in [0, 1], got {p}")

    @property
    def k(self) -> int:
        return 1 if self.tournament_size is None else self.tournament_size

    @property
    def name(self) -> str:
        sel = "RAND" if self.tournament_size is None else f"TOUR{self.tournament_size}"
        return f"{sel}-{'F' if self.deletion == 'fuds' else 'R'}"


@dataclass(frozen=True)
class StopRule:
    max_generations: Optional[float] = None
    stall_generations: Optional[float] = None
    target_fitness: Optional[float] = None

    def __post_init__(self):
        if (
            self.max_generations is None
            and self.stall_generations is None
            and self.target_fitness is None
        ):
            raise ConfigError("stop rule needs at least one clause")
        for name in ("max_generations", "stall_generations"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise ConfigError(f"{name} must be positive, got {v}")


@dataclass(slots=True)
class StepRecord:
    child: int
    deleted: Optional[int]


_DELETERS: dict[str, Callable[[Population, random.Random], int]] = {
    "random": random_delete,
    "fuds": fuds_delete,
}


def steady_state_step(pop: Population, problem, scheme: SchemeConfig, rng: random.Random) -> StepRecord:
    """Create one child, delete a member if at capacity, insert the child.

    A child from crossover is mutated with ``scheme.mutation_prob``; a cloned
    child is always mutated.
    """
    k = scheme.k
    members = pop.members
    p1 = tournament_select(pop, k, rng)
    if rng.random() < scheme.crossover_prob:
        p2 = tournament_select(pop, k, rng)
        child = problem.crossover(members[p1].genome, members[p2].genome, rng)
        if rng.random() < scheme.mutation_prob:
            child = problem.mutate(child, rng)
    else:
        child = problem.mutate(members[p1].genome, rng)
    fitness = problem.evaluate(child)
    deleted = None
    if pop.size >= pop.capacity:
        deleted = _DELETERS[scheme.deletion](pop, rng)
        pop.remove(deleted)
    return StepRecord(pop.add(child, fitness), deleted)


def generations_of(cycles: int, capacity: int) -> float:
    if capacity <= 0:
        raise ValueError(f"capacity must be positive, got {capacity}")
    return cycles / capacity


def run(
    problem,
    scheme: SchemeConfig,
    capacity: int,
    stop: StopRule,
    seed: int = 0,
    initial_size: Optional[int] = None,
    level_count: Optional[int] = None,
    diversity_every: Optional[int] = None,
    band_width: float = 20.0,
    on_step: Optional[Callable[[Population, StepRecord, int], None]] = None,
) -> RunTrace:
    """Run one seeded optimisation and return its trace.

    Args:
        problem: Object providing ``f_min``, ``f_max``, ``random_genome``,
            ``evaluate``, ``mutate`` and ``crossover``.
        scheme: Selection/deletion settings.
        capacity: Maximum population size.
        stop: Halting clauses; the run stops when any of them fires.
        seed: Seed of the run's private random stream.
        initial_size: Number of random genomes to start from; defaults to
            ``capacity``.
        level_count: Number of fitness levels; defaults to round(sqrt(capacity)).
        diversity_every: Cycles between diversity samples. Defaults to
            ``capacity // 10`` for problems with bit-vector genomes (those
            exposing ``bits``) and to no sampling otherwise; 0 disables.
        band_width: Fitness distance below the best that counts as the top
            band for diversity samples.
        on_step: Optional callback ``(pop, record, cycle)`` after every cycle.
    """
    if initial_size is None:
        initial_size = capacity
    if capacity < 1 or not 1 <= initial_size <= capacity:
        raise ConfigError(f"need 1 <= initial_size <= capacity, got {initial_size}, {capacity}")
    if level_count is None:
        level_count = default_level_count(capacity)
    if level_count < 1:
        raise ConfigError(f"level_count must be >= 1, got {level_count}")
    bits = getattr(problem, "bits", None)
    if diversity_every is None:
        diversity_every = max(1, capacity // 10) if bits is not None else 0
    if diversity_every and bits is None:
        raise ConfigError("diversity sampling needs a problem with bit-vector genomes")

    rng = random.Random(seed)
    pop = Population(capacity, LevelTable(problem.f_min, problem.f_max, level_count))
    for _ in range(initial_size):
        g = problem.random_genome(rng)
        pop.add(g, problem.evaluate(g))

    best_id = max(range(len(pop.members)), key=lambda i: pop.members[i].fitness)
    best = pop.members[best_id].fitness
    best_genome = pop.members[best_id].genome
    best_points = [(0, best)]
    diversity: list[DiversitySample] = []

    def sample(cycle):
        genomes = [bits(m.genome) for m in pop.individuals()]
        diversity.append(
            DiversitySample(
                cycle,
                best,
                avg_pairwise_hamming(genomes),
                top_band_diversity(pop, band_width, bits=bits),
            )
        )

    max_cycles = math.inf if stop.max_generations is None else stop.max_generations * capacity
    stall_cycles = math.inf if stop.stall_generations is None else stop.stall_generations * capacity
    target = stop.target_fitness

    cycle = 0
    last_gain = 0
    reason = None
    if diversity_every:
        sample(0)
    while True:
        if target is not None and best >= target:
            reason = "target"
            break
        if cycle >= max_cycles:
            reason = "max_generations"
            break
        if cycle - last_gain >= stall_cycles:
            reason = "stall"
            break
        rec = steady_state_step(pop, problem, scheme, rng)
        cycle += 1
        f = pop.members[rec.child].fitness
        if f > best:
            best = f
            best_genome = pop.members[rec.child].genome
            best_points.append((cycle, f))
            last_gain = cycle
        if diversity_every and cycle % diversity_every == 0:
            sample(cycle)
        if on_step is not None:
            on_step(pop, rec, cycle)
    if diversity_every and (not diversity or diversity[-1].cycle != cycle):
        sample(cycle)

    return RunTrace(
        scheme=scheme.name,
        problem=getattr(problem, "name", type(problem).__name__),
        capacity=capacity,
        initial_size=initial_size,
        level_count=level_count,
        seed=seed,
        stop=stop,
        best_points=best_points,
        diversity=diversity,
        histogram=population_histogram(pop),
        clamped=pop.table.clamped,
        cycles=cycle,
        stop_reason=reason,
        best_genome=best_genome,
        final_fitnesses=[m.fitness for m in pop.individuals()],
    )
