"""Steady-state evolutionary optimisation with Fitness Uniform Deletion (FUDS)."""

from fuds.core import (
    ConfigError,
    Individual,
    LevelTable,
    Population,
    SchemeConfig,
    StepRecord,
    StopRule,
    default_level_count,
    fuds_delete,
    generations_of,
    level_index,
    random_delete,
    run,
    steady_state_step,
    tournament_select,
)
from fuds.metrics import (
    AggregateStats,
    Histogram,
    RunTrace,
    aggregate,
    avg_pairwise_hamming,
    diversity_vs_best_curve,
    population_histogram,
    top_band_diversity,
)

__version__ = "0.1.0"
