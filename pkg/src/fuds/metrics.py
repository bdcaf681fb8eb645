"""Diversity measures, run traces and summary statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence

import numpy as np

__all__ = [
    "AggregateStats",
    "DiversitySample",
    "Histogram",
    "RunTrace",
    "aggregate",
    "avg_pairwise_hamming",
    "diversity_vs_best_curve",
    "population_histogram",
    "top_band_diversity",
]

Z95 = 1.96


@dataclass(frozen=True)
class DiversitySample:
    cycle: int
    best: float
    total: Optional[float]
    top: Optional[float]


@dataclass(frozen=True)
class Histogram:
    """Level occupancy with its boundaries; ``len(edges) == len(counts) + 1``."""

    edges: tuple[float, ...]
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)


@dataclass
class RunTrace:
    """Everything recorded about one run.

    ``best_points`` holds only the cycles at which the best-so-far fitness
    improved, starting with cycle 0.
    """

    scheme: str
    problem: str
    capacity: int
    initial_size: int
    level_count: int
    seed: int
    stop: Any
    best_points: list[tuple[int, float]]
    diversity: list[DiversitySample]
    histogram: Histogram
    clamped: int
    cycles: int
    stop_reason: str
    best_genome: Any = None
    final_fitnesses: list[float] = field(default_factory=list)

    @property
    def best_fitness(self) -> float:
        return self.best_points[-1][1]

    @property
    def generations(self) -> float:
        return self.cycles / self.capacity

    def best_at(self, cycle: int) -> float:
        """Best-so-far fitness after ``cycle`` cycles."""
        value = self.best_points[0][1]
        for c, f in self.best_points:
            if c > cycle:
                break
            value = f
        return value


def avg_pairwise_hamming(genomes: Sequence[Sequence[bool]]) -> Optional[float]:
    """Mean Hamming distance over all unordered pairs of equal-length bit vectors.

    Returns None for fewer than two genomes. Uses the per-bit identity
    sum over pairs = sum_j ones_j * zeros_j, so the cost is linear in the
    population size.
    """
    m = len(genomes)
    if m < 2:
        return None
    arr = np.asarray(genomes, dtype=bool)
    if arr.ndim != 2:
        raise ValueError("genomes must all have the same length")
    ones = arr.sum(axis=0, dtype=np.int64)
    pairs = m * (m - 1) // 2
    return float(np.dot(ones, m - ones)) / pairs


def top_band_diversity(pop, band_width: float = 20.0, bits: Optional[Callable] = None) -> Optional[float]:
    """Pairwise Hamming diversity among members within ``band_width`` of the best.

    ``pop`` is a population or a plain sequence of individuals (objects with
    ``genome`` and ``fitness``). None when fewer than two members qualify.
    """
    members = pop.individuals() if hasattr(pop, "individuals") else list(pop)
    if not members:
        raise ValueError("population is empty")
    conv = bits if bits is not None else (lambda g: g)
    best = max(m.fitness for m in members)
    cut = best - band_width
    return avg_pairwise_hamming([conv(m.genome) for m in members if m.fitness >= cut])


def population_histogram(pop) -> Histogram:
    table = pop.table
    return Histogram(tuple(table.edges()), tuple(table.occupancy))


@dataclass(frozen=True)
class AggregateStats:
    n_runs: int
    mean: float
    stddev: float
    stderr: float
    ci95: float


def aggregate(samples: Sequence[float]) -> AggregateStats:
    """Mean, sample standard deviation (n - 1), standard error and 95% CI half-width."""
    xs = np.asarray(samples, dtype=float)
    n = xs.size
    if n < 2:
        raise ValueError(f"aggregate needs at least 2 samples, got {n}")
    mean = float(xs.mean())
    sd = float(xs.std(ddof=1))
    se = sd / math.sqrt(n)
    return AggregateStats(n, mean, sd, se, Z95 * se)


def _diversity_when_reached(trace: RunTrace, value: float, which: str) -> Optional[float]:
    for s in trace.diversity:
        if s.best >= value:
            return getattr(s, which)
    return None


def diversity_vs_best_curve(traces: Sequence[RunTrace], which: str = "total") -> list[tuple[float, float]]:
    """Mean diversity as a function of the best fitness reached.

    For every best-fitness value seen in any trace, each run that reached it
    contributes its first diversity sample taken once its best was at least
    that value. The curve stops at the largest value reached by a strict
    majority of runs.

    Args:
        traces: Runs with diversity samples.
        which: ``"total"`` or ``"top"`` diversity.
    """
    if which not in ("total", "top"):
        raise ValueError(f"which must be 'total' or 'top', got {which!r}")
    traces = [t for t in traces if t.diversity]
    if not traces:
        return []
    finals = sorted(t.diversity[-1].best for t in traces)
    # largest value reached by more than half of the runs
    cutoff = finals[len(finals) - (len(finals) // 2 + 1)]
    values = sorted({s.best for t in traces for s in t.diversity if s.best <= cutoff})
    curve = []
    for v in values:
        ds = [_diversity_when_reached(t, v, which) for t in traces if t.diversity[-1].best >= v]
        ds = [d for d in ds if d is not None]
        if ds:
            curve.append((v, float(np.mean(ds))))
    return curve
