"""Experiment configuration, repeated seeded runs and CSV output.

A configuration is a ``key = value`` text file; ``#`` starts a comment.

==================  ==========================================================
key                 meaning
==================  ==========================================================
problem             ``deceptive2d``, ``tsp``, ``scp`` or ``sat`` (required)
instance            instance file; required for ``scp`` and ``sat``, optional
                    for ``tsp`` (a ``tsp-matrix`` file)
tsp_cities          city count of a generated TSP instance
tsp_seed            generator seed of that instance (default 0)
deceptive_delta     strip width of the deceptive 2D problem
deceptive_a         strip offsets (default: centred strips)
deceptive_b
tournament_sizes    comma list of tournament sizes; ``rand`` is uniform
                    selection (default ``2``)
deletion            comma list of ``random``/``fuds`` (default both)
capacities          comma list of population sizes (default ``1000``)
initial_size        starting population size or ``full`` (default)
crossover_prob      default 0.5
mutation_prob       default 0.5
level_count         number of fitness levels or ``auto`` = round(sqrt(capacity))
max_generations     stop after this many generations
stall_generations   stop after this many generations without improvement
target_fitness      stop once the best fitness reaches this value; ``optimum``
                    uses the problem's known optimum (deceptive 2D only)
repetitions         runs per grid cell (default 50)
base_seed           run ``i`` of every cell uses seed ``base_seed + i``
diversity_cadence   cycles between diversity samples or ``auto``
band_width          top-band width for diversity samples (default 20)
output              results CSV path
==================  ==========================================================

At least one of the three stop keys must be present.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from fuds.core import ConfigError, SchemeConfig, StopRule, default_level_count, run
from fuds.instances import gen_random_tsp, load_instance
from fuds.metrics import RunTrace, aggregate, diversity_vs_best_curve
from fuds.problems import Deceptive2D, Deceptive2DInstance, MaxSat, SetCover, Tsp

OUTPUT_DIR_ENV = "FUDS_OUTPUT_DIR"

COLUMNS = (
    "kind",
    "cell",
    "problem",
    "scheme",
    "capacity",
    "level_count",
    "run",
    "seed",
    "best_fitness",
    "objective",
    "cycles",
    "generations",
    "stop_reason",
    "clamped",
    "n",
    "mean",
    "stddev",
    "stderr",
    "ci95",
)

OBJECTIVES = {
    "deceptive2d": "generations_to_optimum",
    "tsp": "best_tour_length",
    "scp": "best_cost",
    "sat": "clauses_satisfied",
}


class ConfigParseError(ConfigError):
    """Configuration text with one or more problems.

    ``violations`` holds ``(line, key, message)`` triples; ``line`` is None
    for missing keys.
    """

    def __init__(self, violations: Sequence[tuple[Optional[int], str, str]]):
        self.violations = list(violations)
        super().__init__("\n".join(_fmt_violation(v) for v in self.violations))


def _fmt_violation(v) -> str:
    line, key, msg = v
    where = f"line {line}: " if line is not None else ""
    return f"{where}{key}: {msg}"


class InstanceError(OSError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    problem: str
    instance: Optional[str] = None
    tsp_cities: Optional[int] = None
    tsp_seed: int = 0
    deceptive_a: Optional[float] = None
    deceptive_b: Optional[float] = None
    deceptive_delta: Optional[float] = None
    tournament_sizes: tuple[Optional[int], ...] = (2,)
    deletion: tuple[str, ...] = ("random", "fuds")
    capacities: tuple[int, ...] = (1000,)
    initial_size: Optional[int] = None
    crossover_prob: float = 0.5
    mutation_prob: float = 0.5
    level_count: Optional[int] = None
    max_generations: Optional[float] = None
    stall_generations: Optional[float] = None
    target_fitness: Optional[float | str] = None
    repetitions: int = 50
    base_seed: int = 0
    diversity_cadence: Optional[int] = None
    band_width: float = 20.0
    output: Optional[str] = None

    def stop_rule(self, problem) -> StopRule:
        target = self.target_fitness
        if target == "optimum":
            target = problem.optimum
        return StopRule(self.max_generations, self.stall_generations, target)

    def cells(self) -> list["Cell"]:
        out = []
        for cap in self.capacities:
            for k in self.tournament_sizes:
                for d in self.deletion:
                    scheme = SchemeConfig(k, d, self.crossover_prob, self.mutation_prob)
                    levels = self.level_count or default_level_count(cap)
                    out.append(Cell(f"{scheme.name}-P{cap}", scheme, cap, levels))
        return out


@dataclass(frozen=True)
class Cell:
    name: str
    scheme: SchemeConfig
    capacity: int
    level_count: int


def _split(value: str) -> list[str]:
    return [p.strip() for p in value.split(",") if p.strip()]


def _pos_int(v: str) -> int:
    i = int(v)
    if i < 1:
        raise ValueError("must be a positive integer")
    return i


def _prob(v: str) -> float:
    p = float(v)
    if not 0.0 <= p <= 1.0:
        raise ValueError("must be in [0, 1]")
    return p


def _nonneg_int(v: str) -> int:
    i = int(v)
    if i < 0:
        raise ValueError("must be a non-negative integer")
    return i


def _pos_real(v: str) -> float:
    x = float(v)
    if not x > 0 or math.isinf(x):
        raise ValueError("must be a positive number")
    return x


def _tour(v: str) -> Optional[int]:
    return None if v.lower() == "rand" else _pos_int(v)


def _deletion(v: str) -> str:
    if v not in ("random", "fuds"):
        raise ValueError("must be 'random' or 'fuds'")
    return v


def _listof(conv):
    def parse(v: str) -> tuple:
        items = tuple(conv(p) for p in _split(v))
        if not items:
            raise ValueError("list is empty")
        return items

    return parse


def _auto_or(conv):
    return lambda v: None if v.lower() == "auto" else conv(v)


def _target(v: str):
    return "optimum" if v.lower() == "optimum" else float(v)


def _problem(v: str) -> str:
    if v not in OBJECTIVES:
        raise ValueError(f"must be one of {', '.join(OBJECTIVES)}")
    return v


_KEYS = {
    "problem": _problem,
    "instance": str,
    "tsp_cities": _pos_int,
    "tsp_seed": int,
    "deceptive_a": float,
    "deceptive_b": float,
    "deceptive_delta": float,
    "tournament_sizes": _listof(_tour),
    "deletion": _listof(_deletion),
    "capacities": _listof(_pos_int),
    "initial_size": lambda v: None if v.lower() == "full" else _pos_int(v),
    "crossover_prob": _prob,
    "mutation_prob": _prob,
    "level_count": _auto_or(_pos_int),
    "max_generations": _pos_real,
    "stall_generations": _pos_real,
    "target_fitness": _target,
    "repetitions": _pos_int,
    "base_seed": int,
    "diversity_cadence": _auto_or(_nonneg_int),
    "band_width": _pos_real,
    "output": str,
}


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate configuration text; defaults fill omitted keys.

    Raises:
        ConfigParseError: listing every unknown key, malformed value,
            duplicate or missing key, and cross-key violation.
    """
    values: dict = {}
    lines: dict[str, int] = {}
    bad: list[tuple[Optional[int], str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            bad.append((lineno, line, "expected 'key = value'"))
            continue
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _KEYS:
            bad.append((lineno, key, "unknown key"))
            continue
        if key in lines:
            bad.append((lineno, key, f"duplicate key (first set on line {lines[key]})"))
            continue
        lines[key] = lineno
        if not value:
            bad.append((lineno, key, "empty value"))
            continue
        try:
            values[key] = _KEYS[key](value)
        except ValueError as e:
            bad.append((lineno, key, f"bad value {value!r}: {e}"))

    def need(key, why):
        if key not in values and key not in lines:
            bad.append((None, key, f"missing required key ({why})"))

    need("problem", "benchmark family")
    prob = values.get("problem")
    if prob in ("scp", "sat"):
        need("instance", f"{prob} needs an instance file")
    if prob == "tsp" and "instance" not in values and "instance" not in lines:
        need("tsp_cities", "tsp needs an instance file or generator size")
    if prob == "deceptive2d":
        need("deceptive_delta", "deceptive2d strip width")
    if not any(k in values or k in lines for k in ("max_generations", "stall_generations", "target_fitness")):
        bad.append((None, "max_generations", "missing stop rule: set max_generations, stall_generations or target_fitness"))
    if values.get("target_fitness") == "optimum" and prob not in (None, "deceptive2d"):
        bad.append((lines["target_fitness"], "target_fitness", "'optimum' is only known for deceptive2d"))

    if prob == "deceptive2d" and "deceptive_delta" in values:
        d = values["deceptive_delta"]
        a = values.setdefault("deceptive_a", (1 - d) / 2)
        b = values.setdefault("deceptive_b", (1 - d) / 2)
        try:
            Deceptive2DInstance(a, b, d)
        except ValueError as e:
            bad.append((lines["deceptive_delta"], "deceptive_delta", str(e)))
    if "initial_size" in values and values["initial_size"] is not None:
        too_big = [c for c in values.get("capacities", (1000,)) if c < values["initial_size"]]
        if too_big:
            bad.append((lines["initial_size"], "initial_size", f"exceeds capacity {min(too_big)}"))

    if bad:
        raise ConfigParseError(bad)
    return ExperimentConfig(**values)


def build_problem(cfg: ExperimentConfig):
    """Instantiate the configured problem, loading or generating its instance."""
    try:
        if cfg.problem == "deceptive2d":
            return Deceptive2D(Deceptive2DInstance(cfg.deceptive_a, cfg.deceptive_b, cfg.deceptive_delta))
        if cfg.problem == "tsp":
            if cfg.instance is not None:
                return Tsp(load_instance(cfg.instance, "tsp-matrix"))
            return Tsp(gen_random_tsp(cfg.tsp_cities, cfg.tsp_seed))
        if cfg.problem == "scp":
            return SetCover(load_instance(cfg.instance, "orlib-scp"))
        return MaxSat(load_instance(cfg.instance, "dimacs-cnf"))
    except OSError as e:
        raise InstanceError(f"cannot read instance {cfg.instance}: {e.strerror or e}") from e


def objective_of(problem_name: str, trace: RunTrace) -> float:
    if problem_name == "deceptive2d":
        return trace.generations
    if problem_name in ("tsp", "scp"):
        return 1.0 / trace.best_fitness
    return trace.best_fitness


def run_cell(problem, cfg: ExperimentConfig, cell: Cell, run_index: int) -> RunTrace:
    """One run of one grid cell; the seed is ``base_seed + run_index``."""
    return run(
        problem,
        cell.scheme,
        cell.capacity,
        cfg.stop_rule(problem),
        seed=cfg.base_seed + run_index,
        initial_size=cfg.initial_size,
        level_count=cell.level_count,
        diversity_every=cfg.diversity_cadence,
        band_width=cfg.band_width,
    )


_worker_problem = None


def _init_worker(cfg):
    global _worker_problem
    _worker_problem = build_problem(cfg)


def _worker(args):
    cfg, cell, i = args
    return run_cell(_worker_problem, cfg, cell, i)


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    cells: list[Cell]
    traces: dict[str, list[RunTrace]] = field(default_factory=dict)

    def rows(self) -> list[dict]:
        out = []
        prob = self.config.problem
        for cell in self.cells:
            traces = self.traces[cell.name]
            objs = []
            for i, t in enumerate(traces):
                obj = objective_of(prob, t)
                objs.append(obj)
                out.append(
                    dict(
                        kind="run",
                        cell=cell.name,
                        problem=prob,
                        scheme=cell.scheme.name,
                        capacity=cell.capacity,
                        level_count=cell.level_count,
                        run=i,
                        seed=t.seed,
                        best_fitness=_num(t.best_fitness),
                        objective=_num(obj),
                        cycles=t.cycles,
                        generations=_num(t.generations),
                        stop_reason=t.stop_reason,
                        clamped=t.clamped,
                    )
                )
            agg = dict(
                kind="aggregate",
                cell=cell.name,
                problem=prob,
                scheme=cell.scheme.name,
                capacity=cell.capacity,
                level_count=cell.level_count,
                n=len(objs),
                mean=_num(sum(objs) / len(objs)),
            )
            if len(objs) >= 2:
                s = aggregate(objs)
                agg.update(stddev=_num(s.stddev), stderr=_num(s.stderr), ci95=_num(s.ci95))
            out.append(agg)
        return out

    def to_csv(self) -> str:
        return _csv(COLUMNS, self.rows())

    def diversity_csv(self) -> str:
        rows = []
        for cell in self.cells:
            traces = self.traces[cell.name]
            total = diversity_vs_best_curve(traces, "total")
            top = dict(diversity_vs_best_curve(traces, "top"))
            for best, d in total:
                rows.append(
                    dict(cell=cell.name, best_fitness=_num(best), total_diversity=_num(d), top_diversity=_num(top.get(best)))
                )
        return _csv(("cell", "best_fitness", "total_diversity", "top_diversity"), rows)

    def histogram_csv(self) -> str:
        rows = []
        for cell in self.cells:
            for i, t in enumerate(self.traces[cell.name]):
                h = t.histogram
                for lvl, count in enumerate(h.counts):
                    rows.append(
                        dict(cell=cell.name, run=i, level=lvl, lower=_num(h.edges[lvl]), upper=_num(h.edges[lvl + 1]), count=count)
                    )
        return _csv(("cell", "run", "level", "lower", "upper", "count"), rows)


def _num(x) -> str:
    if x is None:
        return ""
    if isinstance(x, int) or (isinstance(x, float) and x.is_integer() and abs(x) < 1e15):
        return str(int(x))
    return repr(float(x))


def _csv(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def run_experiment(cfg: ExperimentConfig, jobs: int = 1, cells: Optional[Sequence[str]] = None) -> ExperimentResult:
    """Execute every grid cell ``cfg.repetitions`` times.

    Args:
        cfg: Validated configuration.
        jobs: Worker processes; results are identical for any value.
        cells: Restrict to these cell names (for re-running a single cell).
    """
    problem = build_problem(cfg)
    grid = cfg.cells()
    if cells is not None:
        wanted = set(cells)
        grid = [c for c in grid if c.name in wanted]
    tasks = [(cfg, c, i) for c in grid for i in range(cfg.repetitions)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs, initializer=_init_worker, initargs=(cfg,)) as pool:
            traces = list(pool.map(_worker, tasks, chunksize=1))
    else:
        traces = [run_cell(problem, cfg, c, i) for _, c, i in tasks]
    result = ExperimentResult(cfg, grid)
    for (_, c, _), t in zip(tasks, traces):
        result.traces.setdefault(c.name, []).append(t)
    return result


def default_output(cfg: ExperimentConfig) -> Path:
    if cfg.output:
        return Path(cfg.output)
    return Path(os.environ.get(OUTPUT_DIR_ENV, ".")) / "results.csv"


def write_outputs(result: ExperimentResult, path: Path) -> list[Path]:
    """Write the results CSV and, for bit-vector problems, diversity and histogram CSVs."""
    path.parent.mkdir(parents=True, exist_ok=True)
    written = [path]
    path.write_text(result.to_csv(), newline="")
    if result.config.problem in ("sat", "scp"):
        for suffix, text in (("diversity", result.diversity_csv()), ("histogram", result.histogram_csv())):
            p = path.with_name(f"{path.stem}.{suffix}.csv")
            p.write_text(text, newline="")
            written.append(p)
    return written
