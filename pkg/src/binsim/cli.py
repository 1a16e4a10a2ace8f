"""Command line entry point: ``binsim run | plan | validate``.

Exit codes: 0 success, 1 usage or configuration error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import os
import sys
from pathlib import Path

from .config import load_config, load_graph, schema_help
from .engine import SimConfig, Simulation
from .errors import BinSimError, ConfigError, InvalidVertex
from .export import export_ledger_csv, export_levels_csv, write_manifest, write_summary
from .routing import PICKUP, plan_tour

log = logging.getLogger("binsim")

SEED_ENV = "BINSIM_SEED"

LEVELS_CSV = "levels.csv"
LEDGER_CSV = "ledger.csv"
SUMMARY = "summary.txt"
MANIFEST = "manifest.json"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="binsim", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="run a simulation and write its outputs")
    p.add_argument("--config", type=Path, help="config file (defaults when omitted)")
    p.add_argument("--seed", type=int)
    p.add_argument("--ticks", type=int)
    p.add_argument("--out", type=Path, default=Path("."))

    p = sub.add_parser("plan", help="plan one collection tour on a graph file")
    p.add_argument("--graph", type=Path, required=True)
    p.add_argument("--start", required=True, help="start vertex label")
    p.add_argument("--bins", required=True, help="comma separated bin vertex labels")
    p.add_argument("--dump", required=True, help="dump vertex label")
    p.add_argument("--capacity", type=int, required=True)
    p.add_argument("--load", type=int, default=25, help="waste units per bin (25)")
    p.add_argument("--current-load", type=int, default=0)

    p = sub.add_parser("validate", help="check a config file without running it")
    p.add_argument("--config", type=Path, required=True)
    return parser


def resolve_config(path: Path | None, seed: int | None = None, ticks: int | None = None) -> SimConfig:
    """Load the config and apply overrides. Seed precedence: flag, then env, then file."""
    if path is not None and not path.is_file():
        raise UsageError(f"config file not found: {path}")
    config = load_config(path) if path is not None else SimConfig()
    changes = {}
    if seed is not None:
        changes["seed"] = seed
    elif os.environ.get(SEED_ENV):
        try:
            changes["seed"] = int(os.environ[SEED_ENV], 0)
        except ValueError:
            raise UsageError(f"{SEED_ENV} must be an integer") from None
    if ticks is not None:
        changes["ticks"] = ticks
    return dataclasses.replace(config, **changes) if changes else config


def cmd_run(args) -> int:
    config = resolve_config(args.config, args.seed, args.ticks)
    log.info("running %d ticks with seed %d", config.ticks, config.seed)
    result = Simulation(config).run()
    args.out.mkdir(parents=True, exist_ok=True)
    outputs = {"levels": LEVELS_CSV, "ledger": LEDGER_CSV, "summary": SUMMARY}
    export_levels_csv(result, args.out / LEVELS_CSV)
    export_ledger_csv(result, args.out / LEDGER_CSV)
    write_summary(result, args.out / SUMMARY)
    write_manifest(result, args.out / MANIFEST, outputs)
    m = result.metrics
    print(
        f"ticks={config.ticks} seed={config.seed} revenue={m['total_revenue']} "
        f"collected={m['total_units_collected']} trips={m['trips']} -> {args.out}"
    )
    return 0


def cmd_plan(args) -> int:
    if not args.graph.is_file():
        raise UsageError(f"graph file not found: {args.graph}")
    graph = load_graph(args.graph)
    try:
        start = graph.index(args.start)
        dump = graph.index(args.dump)
        verts = [graph.index(label) for label in args.bins.replace(",", " ").split()]
    except InvalidVertex as exc:
        raise UsageError(str(exc)) from None
    route = plan_tour(
        graph, start, [(v, v, args.load) for v in verts], dump, args.capacity, args.current_load
    )
    label = lambda v: graph.vertices[v].label  # noqa: E731
    print("stops:", " ".join(label(s.vertex) for s in route.visits))
    print("pickups:", " ".join(label(s.vertex) for s in route.visits if s.kind == PICKUP))
    for leg in route.legs:
        path = "-".join(label(v) for v in leg.path)
        print(f"  {label(leg.start)} -> {label(leg.end)}  {leg.distance:.4f}  [{path}]")
    print(f"dumps: {route.dump_count}")
    print(f"total_distance: {route.total_distance:.4f}")
    return 0


def cmd_validate(args) -> int:
    config = resolve_config(args.config)
    Simulation(config)
    print(f"{args.config}: ok ({config.world.bin_count} bins, {config.ticks} ticks)")
    return 0


COMMANDS = {"run": cmd_run, "plan": cmd_plan, "validate": cmd_validate}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(
            level=logging.INFO if args.verbose else logging.WARNING,
            format="%(levelname)s %(name)s: %(message)s",
        )
        return COMMANDS[args.command](args)
    except (UsageError, ConfigError) as exc:
        print(f"binsim: error: {exc}", file=sys.stderr)
        print(parser.format_usage(), file=sys.stderr)
        print(schema_help(), file=sys.stderr)
        return 1
    except (BinSimError, OSError) as exc:
        print(f"binsim: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
