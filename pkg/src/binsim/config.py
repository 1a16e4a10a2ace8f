"""Flat ``key = value`` configuration files.

Blank lines and ``#`` comments are ignored. A ``[graph]`` line starts the
graph section, which holds one item per line:

    vertex <label> <x> <y> [kind]     (standalone graph files only)
    <u> <v> <weight>                  (edge; u and v are ids or labels)

In a simulation config the graph section may only list edges, which are
used when ``graph_mode = explicit-edge-list``. Vertex labels there are
``B0..B<n-1>``, ``DUMP`` and ``DEPOT``.
"""

from __future__ import annotations

import dataclasses
from pathlib import Path
from typing import Callable

from .accounting import Tariff
from .engine import SimConfig
from .errors import ParseError, SchemaError
from .world import (
    BIN_SITE,
    VERTEX_KINDS,
    Graph,
    Position,
    Vertex,
    WorldConfig,
    complete_euclidean_edges,
)


def _floats(n: int | None) -> Callable[[str], tuple[float, ...]]:
    def parse(text: str) -> tuple[float, ...]:
        vals = tuple(float(v) for v in text.replace(",", " ").split())
        if n is not None and len(vals) != n:
            raise ValueError(f"expected {n} numbers, got {len(vals)}")
        return vals

    return parse


def _positions(text: str) -> tuple[Position, ...]:
    return tuple(Position(*_floats(2)(chunk)) for chunk in text.split(";") if chunk.strip())


def _int(text: str) -> int:
    return int(text, 0)


# key -> (parser, documentation)
SCHEMA: dict[str, tuple[Callable[[str], object], str]] = {
    "bin_count": (_int, "number of bins (25)"),
    "bounds": (_floats(4), "xmin, xmax, ymin, ymax (-12, 12, -12, 12)"),
    "dump_position": (_floats(2), "x, y of the dump (xmax, ymax)"),
    "depot_position": (_floats(2), "x, y of the truck depot (0, 0)"),
    "graph_mode": (str, "complete-euclidean | explicit-edge-list"),
    "bin_positions": (_positions, "optional fixed positions 'x, y; x, y; ...'"),
    "bin_capacity": (_int, "bin capacity in waste units (25)"),
    "yellow_threshold": (_int, "level at which a bin turns yellow (10)"),
    "truck_count": (_int, "number of trucks (1)"),
    "truck_capacity": (_int, "truck capacity in waste units (100)"),
    "fill_model": (str, "bernoulli | deterministic"),
    "fill_rate_min": (float, "lower bound of random per-bin fill rates (0.2)"),
    "fill_rate_max": (float, "upper bound of random per-bin fill rates (0.8)"),
    "fill_rates": (_floats(None), "optional explicit per-bin fill probabilities"),
    "price_per_unit": (_int, "UC charged per collected waste unit (500)"),
    "fixed_trip_cost": (_int, "UC cost of one dump trip (0)"),
    "dispatch_threshold": (_int, "full bins needed before a tour is planned (1)"),
    "ticks": (_int, "simulation horizon in ticks (93)"),
    "seed": (_int, "random seed (42)"),
    "citizen_step": (float, "citizen step length per tick (1.0)"),
}

WORLD_KEYS = {"bin_count", "bounds", "dump_position", "depot_position", "graph_mode", "bin_positions"}
TARIFF_KEYS = {"price_per_unit", "fixed_trip_cost"}


def schema_help() -> str:
    width = max(map(len, SCHEMA))
    lines = ["config keys (key = value):"]
    lines += [f"  {k:<{width}}  {doc}" for k, (_, doc) in SCHEMA.items()]
    lines.append("  [graph]  section of 'u v weight' edge lines")
    return "\n".join(lines)


def _split(text: str) -> tuple[list[tuple[int, str, str]], list[tuple[int, list[str]]]]:
    """Return (key/value lines, graph section lines), each tagged with its line number."""
    pairs, graph = [], []
    in_graph = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower() == "[graph]":
            in_graph = True
        elif line.startswith("["):
            raise ParseError(f"unknown section {line}", lineno)
        elif in_graph:
            graph.append((lineno, line.split()))
        elif "=" in line:
            key, _, value = line.partition("=")
            pairs.append((lineno, key.strip(), value.strip()))
        else:
            raise ParseError(f"expected 'key = value', got {raw.strip()!r}", lineno)
    return pairs, graph


def parse_config(text: str) -> SimConfig:
    pairs, graph_lines = _split(text)
    values: dict[str, object] = {}
    for lineno, key, raw in pairs:
        if key not in SCHEMA:
            raise SchemaError(key, f"unknown key (line {lineno})")
        if key in values:
            raise SchemaError(key, f"duplicate key (line {lineno})")
        parser = SCHEMA[key][0]
        try:
            values[key] = parser(raw)
        except ValueError as exc:
            raise ParseError(f"bad value for {key}: {exc}", lineno) from None

    world = {k: values.pop(k) for k in list(values) if k in WORLD_KEYS}
    tariff = {k: values.pop(k) for k in list(values) if k in TARIFF_KEYS}
    if graph_lines:
        world["edges"] = _config_edges(graph_lines, world)
    return SimConfig(world=WorldConfig(**world), tariff=Tariff(**tariff), **values)


def _config_edges(lines, world: dict) -> tuple[tuple[int, int, float], ...]:
    n = world.get("bin_count", WorldConfig.bin_count)
    probe = WorldConfig(**{k: v for k, v in world.items() if k != "bin_positions"} | {"bin_count": n})
    labels = {f"B{i}": i for i in range(n)}
    labels["DUMP"] = n
    labels["DEPOT"] = n if probe.shared_dump_depot else n + 1
    edges = []
    for lineno, tokens in lines:
        if tokens[0] == "vertex":
            raise ParseError("vertex lines are only allowed in standalone graph files", lineno)
        edges.append(_edge(tokens, labels, lineno))
    return tuple(edges)


def _edge(tokens: list[str], labels: dict[str, int], lineno: int) -> tuple[int, int, float]:
    if len(tokens) != 3:
        raise ParseError("edge lines need exactly 'u v weight'", lineno)

    def vid(tok: str) -> int:
        if tok in labels:
            return labels[tok]
        try:
            return int(tok)
        except ValueError:
            raise ParseError(f"unknown vertex {tok!r}", lineno) from None

    try:
        weight = float(tokens[2])
    except ValueError:
        raise ParseError(f"bad edge weight {tokens[2]!r}", lineno) from None
    return vid(tokens[0]), vid(tokens[1]), weight


def load_config(path) -> SimConfig:
    return parse_config(Path(path).read_text())


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple) and value and isinstance(value[0], tuple):
        return "; ".join(_fmt(v) for v in value)
    if isinstance(value, tuple):
        return ", ".join(_fmt(v) for v in value)
    return str(value)


def dump_config(config: SimConfig) -> str:
    """Serialise a config with every key resolved. Inverse of :func:`parse_config`."""
    flat = {f.name: getattr(config, f.name) for f in dataclasses.fields(config)}
    world = flat.pop("world")
    tariff = flat.pop("tariff")
    flat.update({f.name: getattr(world, f.name) for f in dataclasses.fields(world)})
    flat.update(dataclasses.asdict(tariff))
    edges = flat.pop("edges")
    lines = [f"{k} = {_fmt(flat[k])}" for k in SCHEMA if flat.get(k) is not None]
    if edges:
        lines.append("[graph]")
        lines += [f"{u} {v} {w!r}" for u, v, w in edges]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Parse a standalone graph file of ``vertex`` and edge lines.

    Without any edge lines the graph is complete with Euclidean weights.
    The first vertex of kind ``dump`` and of kind ``depot`` become the
    graph's dump and depot.
    """
    _, lines = _split("[graph]\n" + text.replace("[graph]", "", 1))
    vertices: list[Vertex] = []
    edge_lines = []
    for lineno, tokens in lines:
        lineno -= 1
        if tokens[0] != "vertex":
            edge_lines.append((lineno, tokens))
            continue
        if len(tokens) not in (4, 5):
            raise ParseError("vertex lines need 'vertex label x y [kind]'", lineno)
        kind = tokens[4] if len(tokens) == 5 else BIN_SITE
        if kind not in VERTEX_KINDS:
            raise ParseError(f"unknown vertex kind {kind!r}", lineno)
        if any(v.label == tokens[1] for v in vertices):
            raise ParseError(f"duplicate vertex label {tokens[1]!r}", lineno)
        try:
            pos = Position(float(tokens[2]), float(tokens[3]))
        except ValueError:
            raise ParseError("vertex coordinates must be numbers", lineno) from None
        vertices.append(Vertex(len(vertices), tokens[1], pos, kind))
    if not vertices:
        raise ParseError("graph file defines no vertices")
    labels = {v.label: v.id for v in vertices}
    if edge_lines:
        edges = [_edge(tokens, labels, lineno) for lineno, tokens in edge_lines]
    else:
        edges = complete_euclidean_edges(vertices)
    first = {k: next((v.id for v in vertices if v.kind == k), None) for k in VERTEX_KINDS}
    return Graph(vertices, edges, dump=first["dump"], depot=first["depot"])


def load_graph(path) -> Graph:
    return parse_graph(Path(path).read_text())


__all__ = [
    "SCHEMA",
    "schema_help",
    "parse_config",
    "load_config",
    "dump_config",
    "parse_graph",
    "load_graph",
]
