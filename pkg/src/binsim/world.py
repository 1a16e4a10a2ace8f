"""City construction: bin placement and the routing graph.

Vertex ids are dense. Bins occupy ``0..bin_count-1``, followed by the dump
and then the depot (the depot reuses the dump vertex when both sit at the
same position).
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import DisconnectedGraph, InvalidVertex, PlacementExhausted, SchemaError

BIN_SITE = "bin-site"
DUMP = "dump"
DEPOT = "depot"
VERTEX_KINDS = (BIN_SITE, DUMP, DEPOT)

COMPLETE_EUCLIDEAN = "complete-euclidean"
EXPLICIT_EDGES = "explicit-edge-list"
GRAPH_MODES = (COMPLETE_EUCLIDEAN, EXPLICIT_EDGES)

MIN_SEPARATION = 0.5
MAX_PLACEMENT_ATTEMPTS = 10_000


class Position(NamedTuple):
    x: float
    y: float

    def distance(self, other: Position) -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


class Bounds(NamedTuple):
    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def contains(self, p: Position) -> bool:
        return self.xmin <= p.x <= self.xmax and self.ymin <= p.y <= self.ymax

    def clamp(self, p: Position) -> Position:
        return Position(
            min(max(p.x, self.xmin), self.xmax), min(max(p.y, self.ymin), self.ymax)
        )


@dataclass(frozen=True)
class Vertex:
    id: int
    label: str
    position: Position
    kind: str = BIN_SITE


class Graph:
    """Undirected weighted graph over labelled vertices.

    Weights are not checked here; :func:`binsim.routing.dijkstra` rejects
    negative weights itself.
    """

    def __init__(
        self,
        vertices: Sequence[Vertex],
        edges: Iterable[tuple[int, int, float]],
        dump: int | None = None,
        depot: int | None = None,
    ):
        self.vertices = tuple(vertices)
        for i, v in enumerate(self.vertices):
            if v.id != i:
                raise InvalidVertex(f"vertex ids must be dense, got {v.id} at index {i}")
        n = len(self.vertices)
        self.edges = tuple((int(u), int(v), float(w)) for u, v, w in edges)
        self._adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for u, v, w in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidVertex(f"edge ({u}, {v}) references a missing vertex")
            if u == v:
                raise InvalidVertex(f"self-loop on vertex {u}")
            self._adj[u].append((v, w))
            self._adj[v].append((u, w))
        for lst in self._adj:
            lst.sort()
        self._by_label = {v.label: v.id for v in self.vertices}
        self.dump = dump
        self.depot = depot
        # memoised shortest-path trees, filled by binsim.routing
        self._trees: dict = {}

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"Graph(n={len(self.vertices)}, edges={len(self.edges)})"

    def neighbors(self, u: int) -> list[tuple[int, float]]:
        return self._adj[u]

    def has_vertex(self, u) -> bool:
        return isinstance(u, int) and 0 <= u < len(self.vertices)

    def index(self, label: str) -> int:
        try:
            return self._by_label[label]
        except KeyError:
            raise InvalidVertex(f"unknown vertex label {label!r}") from None

    def reachable_from(self, source: int) -> set[int]:
        seen = {source}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for v, _ in self._adj[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen


def complete_euclidean_edges(vertices: Sequence[Vertex]) -> list[tuple[int, int, float]]:
    return [
        (a.id, b.id, a.position.distance(b.position))
        for i, a in enumerate(vertices)
        for b in vertices[i + 1 :]
    ]


@dataclass(frozen=True)
class WorldConfig:
    bin_count: int = 25
    bounds: Bounds = Bounds(-12.0, 12.0, -12.0, 12.0)
    dump_position: Position | None = None
    depot_position: Position | None = None
    graph_mode: str = COMPLETE_EUCLIDEAN
    edges: tuple[tuple[int, int, float], ...] = ()
    bin_positions: tuple[Position, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "bounds", Bounds(*map(float, self.bounds)))
        if self.dump_position is None:
            object.__setattr__(
                self, "dump_position", Position(self.bounds.xmax, self.bounds.ymax)
            )
        if self.depot_position is None:
            object.__setattr__(self, "depot_position", Position(0.0, 0.0))
        object.__setattr__(self, "dump_position", Position(*map(float, self.dump_position)))
        object.__setattr__(self, "depot_position", Position(*map(float, self.depot_position)))
        object.__setattr__(self, "edges", tuple((int(u), int(v), float(w)) for u, v, w in self.edges))
        if self.bin_positions is not None:
            object.__setattr__(
                self,
                "bin_positions",
                tuple(Position(float(x), float(y)) for x, y in self.bin_positions),
            )
        self.validate()

    def validate(self):
        if self.bin_count < 1:
            raise SchemaError("bin_count", "must be >= 1")
        b = self.bounds
        if not (b.xmin <= b.xmax and b.ymin <= b.ymax):
            raise SchemaError("bounds", f"degenerate bounds {tuple(b)}")
        if self.graph_mode not in GRAPH_MODES:
            raise SchemaError("graph_mode", f"must be one of {', '.join(GRAPH_MODES)}")
        for name in ("dump_position", "depot_position"):
            if not b.contains(getattr(self, name)):
                raise SchemaError(name, "lies outside the world bounds")
        if self.bin_positions is not None:
            if len(self.bin_positions) != self.bin_count:
                raise SchemaError("bin_positions", "must list exactly bin_count positions")
            for p in self.bin_positions:
                if not b.contains(p):
                    raise SchemaError("bin_positions", f"{tuple(p)} lies outside the world bounds")
        if self.edges and self.graph_mode != EXPLICIT_EDGES:
            raise SchemaError("graph_mode", "edges given but graph_mode is not explicit-edge-list")

    @property
    def shared_dump_depot(self) -> bool:
        return self.dump_position == self.depot_position


def place_bins(config: WorldConfig, rng: random.Random) -> list[Position]:
    """Sample ``bin_count`` distinct positions uniformly inside the bounds.

    Consecutive bins are drawn by rejection: a candidate closer than
    ``MIN_SEPARATION`` to an accepted bin is discarded. Each bin gets at most
    ``MAX_PLACEMENT_ATTEMPTS`` candidates.
    """
    b = config.bounds
    placed: list[Position] = []
    for i in range(config.bin_count):
        for _ in range(MAX_PLACEMENT_ATTEMPTS):
            cand = Position(rng.uniform(b.xmin, b.xmax), rng.uniform(b.ymin, b.ymax))
            if all(cand.distance(p) >= MIN_SEPARATION for p in placed):
                placed.append(cand)
                break
        else:
            raise PlacementExhausted(
                f"could not place bin {i} of {config.bin_count} after "
                f"{MAX_PLACEMENT_ATTEMPTS} attempts; bounds too small"
            )
    return placed


def build_graph(bin_positions: Sequence[Position], config: WorldConfig) -> Graph:
    vertices = [
        Vertex(i, f"B{i}", Position(*p), BIN_SITE) for i, p in enumerate(bin_positions)
    ]
    dump = len(vertices)
    vertices.append(Vertex(dump, "DUMP", config.dump_position, DUMP))
    if config.shared_dump_depot:
        depot = dump
    else:
        depot = dump + 1
        vertices.append(Vertex(depot, "DEPOT", config.depot_position, DEPOT))

    if config.graph_mode == COMPLETE_EUCLIDEAN:
        return Graph(vertices, complete_euclidean_edges(vertices), dump=dump, depot=depot)

    graph = Graph(vertices, config.edges, dump=dump, depot=depot)
    missing = set(range(len(vertices))) - graph.reachable_from(depot)
    if missing:
        labels = ", ".join(vertices[i].label for i in sorted(missing))
        raise DisconnectedGraph(f"unreachable from depot: {labels}")
    return graph
