"""Command-line entry point: ``fuds run | gen-tsp | validate``.

Exit codes: 0 success, 1 invalid configuration or arguments, 2 unreadable
instance or output.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from fuds.bench import ConfigParseError, InstanceError, default_output, parse_config, run_experiment, write_outputs
from fuds.instances import ParseError, gen_random_tsp, serialize_tsp

log = logging.getLogger("fuds")


def _load_config(path: str):
    try:
        text = Path(path).read_text()
    except OSError as e:
        print(f"error: cannot read config {path}: {e.strerror}", file=sys.stderr)
        return None, 1
    try:
        return parse_config(text), 0
    except ConfigParseError as e:
        print(f"error: invalid config {path}:", file=sys.stderr)
        for v in e.violations:
            line, key, msg = v
            where = f"line {line}: " if line is not None else ""
            print(f"  {where}{key}: {msg}", file=sys.stderr)
        return None, 1


def cmd_run(args) -> int:
    cfg, code = _load_config(args.config)
    if cfg is None:
        return code
    try:
        result = run_experiment(cfg, jobs=args.jobs)
    except (InstanceError, ParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    out = Path(args.out) if args.out else default_output(cfg)
    try:
        written = write_outputs(result, out)
    except OSError as e:
        print(f"error: cannot write {out}: {e.strerror}", file=sys.stderr)
        return 2
    for p in written:
        log.info("wrote %s", p)
    return 0


def cmd_validate(args) -> int:
    cfg, code = _load_config(args.config)
    if cfg is None:
        return code
    cells = cfg.cells()
    print(f"ok: {cfg.problem}, {len(cells)} cells x {cfg.repetitions} runs")
    for c in cells:
        print(f"  {c.name} (levels={c.level_count})")
    return 0


def cmd_gen_tsp(args) -> int:
    try:
        inst = gen_random_tsp(args.cities, args.seed)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    text = serialize_tsp(inst)
    if args.out == "-":
        sys.stdout.write(text)
        return 0
    try:
        Path(args.out).write_text(text, newline="")
    except OSError as e:
        print(f"error: cannot write {args.out}: {e.strerror}", file=sys.stderr)
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fuds", description="Steady-state EA experiments with random deletion and FUDS.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run an experiment grid and write CSV results")
    r.add_argument("config")
    r.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    r.add_argument("--out", help="results CSV (default: config 'output' or $FUDS_OUTPUT_DIR/results.csv)")
    r.set_defaults(func=cmd_run)

    g = sub.add_parser("gen-tsp", help="write a random-distance TSP instance")
    g.add_argument("--cities", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out", required=True, help="output path, '-' for stdout")
    g.set_defaults(func=cmd_gen_tsp)

    v = sub.add_parser("validate", help="check a config file and list its grid cells")
    v.add_argument("config")
    v.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 1 if e.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return 1
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
