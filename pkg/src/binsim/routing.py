"""Dijkstra shortest paths and greedy capacity-aware collection tours."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import InvalidVertex, NegativeWeight, Unreachable
from .world import Graph

START = "start"
PICKUP = "pickup"
DUMP_STOP = "dump"


@dataclass(frozen=True)
class ShortestPathTree:
    source: int
    dist: dict[int, float]
    prev: dict[int, int]

    def reachable(self, v: int) -> bool:
        return self.dist[v] < math.inf

    def path_to(self, v: int) -> list[int] | None:
        if not self.reachable(v):
            return None
        path = [v]
        while path[-1] != self.source:
            path.append(self.prev[path[-1]])
        path.reverse()
        return path


def _check_vertex(graph: Graph, v) -> None:
    if not graph.has_vertex(v):
        raise InvalidVertex(f"vertex {v!r} is not in the graph")


def dijkstra(graph: Graph, source: int) -> ShortestPathTree:
    """Single-source shortest paths with a binary heap.

    Ties are broken deterministically: vertices at equal distance are settled
    in ascending id order, and among optimal predecessors the smallest id wins.
    Unreachable vertices get ``math.inf`` and no predecessor.
    """
    _check_vertex(graph, source)
    for u, v, w in graph.edges:
        if w < 0:
            raise NegativeWeight(f"edge ({u}, {v}) has weight {w}")

    n = len(graph)
    dist = [math.inf] * n
    prev: list[int | None] = [None] * n
    done = [False] * n
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w in graph.neighbors(u):
            if done[v]:
                continue
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                prev[v] = u
                heapq.heappush(heap, (nd, v))
            elif nd == dist[v] and u < prev[v]:
                prev[v] = u
    return ShortestPathTree(
        source,
        dict(enumerate(dist)),
        {v: p for v, p in enumerate(prev) if p is not None},
    )


def shortest_path_tree(graph: Graph, source: int) -> ShortestPathTree:
    """Memoised :func:`dijkstra`; graphs are immutable so trees never go stale."""
    tree = graph._trees.get(source)
    if tree is None:
        tree = graph._trees[source] = dijkstra(graph, source)
    return tree


def shortest_path(graph: Graph, s: int, t: int) -> tuple[list[int], float] | None:
    """Return ``(path, cost)`` from ``s`` to ``t``, or ``None`` if unreachable."""
    _check_vertex(graph, t)
    tree = shortest_path_tree(graph, s)
    path = tree.path_to(t)
    if path is None:
        return None
    return path, tree.dist[t]


class Stop(NamedTuple):
    vertex: int
    kind: str
    bin_id: int | None = None


class Leg(NamedTuple):
    start: int
    end: int
    path: tuple[int, ...]
    distance: float


class FullBin(NamedTuple):
    bin_id: int
    vertex: int
    load: int


@dataclass(frozen=True)
class Route:
    visits: tuple[Stop, ...]
    legs: tuple[Leg, ...]

    @property
    def stops(self) -> list[int]:
        return [s.vertex for s in self.visits]

    @property
    def total_distance(self) -> float:
        return sum(leg.distance for leg in self.legs)

    @property
    def planned_pickups(self) -> list[int]:
        return [s.bin_id for s in self.visits if s.kind == PICKUP]

    @property
    def dump_count(self) -> int:
        return sum(1 for s in self.visits if s.kind == DUMP_STOP)


def plan_tour(
    graph: Graph,
    start: int,
    full_bins: Sequence[tuple[int, int, int]],
    dump: int,
    truck_capacity: int,
    current_load: int = 0,
) -> Route:
    """Greedy nearest-neighbour collection tour with capacity-triggered dumps.

    From the current stop the nearest outstanding bin (by shortest-path cost,
    ties to the smaller bin id) is chosen next. If picking it up would push
    the projected load over ``truck_capacity``, a dump stop is inserted first.
    A final dump closes the tour whenever the truck would end up loaded.
    """
    _check_vertex(graph, start)
    _check_vertex(graph, dump)
    bins = [FullBin(*b) for b in full_bins]
    if not bins:
        raise ValueError("plan_tour needs at least one full bin")
    if len({b.bin_id for b in bins}) != len(bins):
        raise ValueError("duplicate bin ids in full_bins")
    for b in bins:
        _check_vertex(graph, b.vertex)
        if b.load > truck_capacity:
            raise ValueError(f"bin {b.bin_id} load {b.load} exceeds truck capacity")
    if not 0 <= current_load <= truck_capacity:
        raise ValueError("current_load must lie in [0, truck_capacity]")

    def go_dump(cur: int) -> None:
        if not shortest_path_tree(graph, cur).reachable(dump):
            raise Unreachable(f"dump {dump} unreachable from vertex {cur}")
        visits.append(Stop(dump, DUMP_STOP))

    visits = [Stop(start, START)]
    cur, load = start, current_load
    remaining = sorted(bins)
    while remaining:
        dist = shortest_path_tree(graph, cur).dist
        nxt = min(remaining, key=lambda b: (dist[b.vertex], b.bin_id))
        if dist[nxt.vertex] == math.inf:
            raise Unreachable(f"bin {nxt.bin_id} unreachable from vertex {cur}")
        if load + nxt.load > truck_capacity:
            go_dump(cur)
            cur, load = dump, 0
        visits.append(Stop(nxt.vertex, PICKUP, nxt.bin_id))
        cur, load = nxt.vertex, load + nxt.load
        remaining.remove(nxt)
    if load > 0:
        go_dump(cur)

    legs = []
    for a, b in zip(visits, visits[1:]):
        tree = shortest_path_tree(graph, a.vertex)
        legs.append(Leg(a.vertex, b.vertex, tuple(tree.path_to(b.vertex)), tree.dist[b.vertex]))
    return Route(tuple(visits), tuple(legs))
