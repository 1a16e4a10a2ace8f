"""The tick loop.

Every tick runs five phases in a fixed order:

1. fill      - ``step_bin`` for each bin, ascending id
2. dispatch  - plan tours for unassigned full bins when enough have piled up
3. move      - every en-route truck advances one stop
4. citizens  - each citizen takes one random step, ascending id
5. record    - append a :class:`TickRecord`

All randomness comes from one ``random.Random(seed)`` and is drawn in that
order, so a config and seed fully determine the result.
"""

from __future__ import annotations

import random
import statistics
from dataclasses import dataclass, field
from typing import NamedTuple

from .accounting import Citizen, LedgerEntry, Tariff, bill, move_citizen, total_revenue, trip_cost
from .bins import (
    BIN_CAPACITY,
    YELLOW_THRESHOLD,
    BernoulliPerBin,
    Bin,
    BinState,
    DeterministicUnit,
    FillModel,
    count_full,
    step_bin,
)
from .errors import SchemaError
from .fleet import TRUCK_CAPACITY, CollectionEvent, DumpEvent, Event, Truck, advance, assign_route
from .routing import plan_tour
from .world import Graph, WorldConfig, build_graph, place_bins

BERNOULLI = "bernoulli"
DETERMINISTIC = "deterministic"
FILL_MODELS = (BERNOULLI, DETERMINISTIC)


@dataclass(frozen=True)
class SimConfig:
    world: WorldConfig = field(default_factory=WorldConfig)
    bin_capacity: int = BIN_CAPACITY
    yellow_threshold: int = YELLOW_THRESHOLD
    truck_count: int = 1
    truck_capacity: int = TRUCK_CAPACITY
    fill_model: str = BERNOULLI
    fill_rate_min: float = 0.2
    fill_rate_max: float = 0.8
    # explicit per-bin rates override the uniform draw
    fill_rates: tuple[float, ...] | None = None
    tariff: Tariff = field(default_factory=Tariff)
    dispatch_threshold: int = 1
    ticks: int = 93
    seed: int = 42
    citizen_step: float = 1.0

    def __post_init__(self):
        if self.fill_rates is not None:
            object.__setattr__(self, "fill_rates", tuple(float(r) for r in self.fill_rates))
        self.validate()

    def validate(self):
        if self.bin_capacity < 2:
            raise SchemaError("bin_capacity", "must be >= 2")
        if not 0 < self.yellow_threshold < self.bin_capacity:
            raise SchemaError("yellow_threshold", "need 0 < yellow_threshold < bin_capacity")
        if self.dispatch_threshold < 1:
            raise SchemaError("dispatch_threshold", "must be >= 1")
        if self.ticks < 0:
            raise SchemaError("ticks", "must be >= 0")
        if self.truck_count < 1:
            raise SchemaError("truck_count", "must be >= 1")
        if self.truck_capacity < self.bin_capacity:
            raise SchemaError("truck_capacity", "must hold at least one full bin")
        if self.fill_model not in FILL_MODELS:
            raise SchemaError("fill_model", f"must be one of {', '.join(FILL_MODELS)}")
        if not 0.0 <= self.fill_rate_min <= self.fill_rate_max <= 1.0:
            raise SchemaError("fill_rate_min", "need 0 <= fill_rate_min <= fill_rate_max <= 1")
        if self.fill_rates is not None:
            if len(self.fill_rates) != self.world.bin_count:
                raise SchemaError("fill_rates", "must list one rate per bin")
            if any(not 0.0 <= r <= 1.0 for r in self.fill_rates):
                raise SchemaError("fill_rates", "rates must lie in [0, 1]")
        if self.citizen_step < 0:
            raise SchemaError("citizen_step", "must be >= 0")


class TickRecord(NamedTuple):
    tick: int
    levels: tuple[int, ...]
    states: tuple[BinState, ...]
    full_bins_uncollected: int
    truck_loads: tuple[int, ...]
    truck_status: tuple[str, ...]
    cumulative_revenue: int
    units_generated: int
    units_dumped: int


class CollectionDelay(NamedTuple):
    bin_id: int
    full_since: int
    collected_at: int

    @property
    def delay(self) -> int:
        return self.collected_at - self.full_since


@dataclass
class SimResult:
    config: SimConfig
    records: list[TickRecord]
    events: list[Event]
    ledger: list[LedgerEntry]
    delays: list[CollectionDelay]
    citizens: list[Citizen]
    metrics: dict


class Simulation:
    """Mutable simulation state plus the tick loop that drives it.

    Attributes are public so tests can script scenarios between ticks, e.g.
    by editing ``fill_model.rates``.
    """

    def __init__(self, config: SimConfig):
        self.config = config
        self.rng = random.Random(config.seed)
        wc = config.world
        if wc.bin_positions is not None:
            positions = list(wc.bin_positions)
        else:
            positions = place_bins(wc, self.rng)
        self.graph: Graph = build_graph(positions, wc)

        if config.fill_model == DETERMINISTIC:
            self.fill_model: FillModel = DeterministicUnit()
        elif config.fill_rates is not None:
            self.fill_model = BernoulliPerBin(list(config.fill_rates))
        else:
            self.fill_model = BernoulliPerBin.uniform(
                wc.bin_count, self.rng, config.fill_rate_min, config.fill_rate_max
            )

        self.bins = [
            Bin(i, i, owner=i, capacity=config.bin_capacity, yellow_threshold=config.yellow_threshold)
            for i in range(wc.bin_count)
        ]
        self.citizens = [
            Citizen(i, p, owned_bin=i, step_length=config.citizen_step)
            for i, p in enumerate(positions)
        ]
        self.trucks = [
            Truck(i, self.graph.depot, capacity=config.truck_capacity)
            for i in range(config.truck_count)
        ]
        self.tick = 0
        self.assigned: set[int] = set()
        self.events: list[Event] = []
        self.ledger: list[LedgerEntry] = []
        self.delays: list[CollectionDelay] = []
        self.units_generated = 0
        self.units_dumped = 0
        self.revenue = 0
        self.records: list[TickRecord] = [self._record()]

    @property
    def full_bins_uncollected(self) -> int:
        return count_full(self.bins)

    def step(self) -> TickRecord:
        self.tick += 1
        t = self.tick
        rng = self.rng

        for b in self.bins:
            before = b.level
            step_bin(b, self.fill_model, rng, t)
            self.units_generated += b.level - before

        self._dispatch()

        for truck in self.trucks:
            if truck.idle:
                continue
            stop = truck.route.visits[truck.cursor + 1]
            full_since = self.bins[stop.bin_id].full_since if stop.bin_id is not None else None
            _, events = advance(truck, t, self.bins)
            for ev in events:
                if isinstance(ev, CollectionEvent):
                    self._settle(ev, full_since)
                else:
                    self.units_dumped += ev.units
            self.events.extend(events)

        bounds = self.config.world.bounds
        for c in self.citizens:
            move_citizen(c, rng, bounds)

        rec = self._record()
        self.records.append(rec)
        return rec

    def _dispatch(self) -> None:
        pending = [b for b in self.bins if b.state is BinState.RED and b.id not in self.assigned]
        if len(pending) < self.config.dispatch_threshold:
            return
        idle = [tr for tr in self.trucks if tr.idle]
        if not idle:
            return
        groups: list[list[Bin]] = [[] for _ in idle]
        for k, b in enumerate(pending):
            groups[k % len(idle)].append(b)
        for truck, group in zip(idle, groups):
            if not group:
                continue
            route = plan_tour(
                self.graph,
                truck.vertex,
                [(b.id, b.vertex, b.level) for b in group],
                self.graph.dump,
                truck.capacity,
                truck.load,
            )
            assign_route(truck, route)
            self.assigned.update(b.id for b in group)

    def _settle(self, ev: CollectionEvent, full_since: int | None) -> None:
        self.assigned.discard(ev.bin_id)
        owner = self.citizens[self.bins[ev.bin_id].owner]
        entry = bill(owner, ev.tick, ev.bin_id, ev.units, self.config.tariff)
        self.ledger.append(entry)
        self.revenue += entry.amount
        if full_since is not None:
            self.delays.append(CollectionDelay(ev.bin_id, full_since, ev.tick))

    def _record(self) -> TickRecord:
        return TickRecord(
            self.tick,
            tuple(b.level for b in self.bins),
            tuple(b.state for b in self.bins),
            count_full(self.bins),
            tuple(tr.load for tr in self.trucks),
            tuple(str(tr.status) for tr in self.trucks),
            self.revenue,
            self.units_generated,
            self.units_dumped,
        )

    def run(self) -> SimResult:
        while self.tick < self.config.ticks:
            self.step()
        return self.result()

    def result(self) -> SimResult:
        return SimResult(
            self.config,
            list(self.records),
            list(self.events),
            list(self.ledger),
            list(self.delays),
            list(self.citizens),
            self.metrics(),
        )

    def metrics(self) -> dict:
        delays = [d.delay for d in self.delays]
        trips = sum(tr.trips for tr in self.trucks)
        revenue = total_revenue(self.ledger)
        cost = trip_cost(trips, self.config.tariff)
        return {
            "total_revenue": revenue,
            "total_trip_cost": cost,
            "net_revenue": revenue - cost,
            "total_distance": sum(tr.odometer for tr in self.trucks),
            "mean_collection_delay": statistics.fmean(delays) if delays else 0.0,
            "max_collection_delay": max(delays, default=0),
            "total_units_collected": sum(
                e.units for e in self.events if isinstance(e, CollectionEvent)
            ),
            "total_units_dumped": self.units_dumped,
            "units_generated": self.units_generated,
            "trips": trips,
        }


def init(config: SimConfig) -> Simulation:
    return Simulation(config)


def tick(state: Simulation) -> Simulation:
    if state.tick >= state.config.ticks:
        raise RuntimeError(f"horizon of {state.config.ticks} ticks already reached")
    state.step()
    return state


def run(config: SimConfig) -> SimResult:
    return Simulation(config).run()


def full_bins_uncollected(state: Simulation) -> int:
    return state.full_bins_uncollected


__all__ = [
    "SimConfig",
    "Simulation",
    "SimResult",
    "TickRecord",
    "CollectionDelay",
    "DumpEvent",
    "init",
    "tick",
    "run",
    "full_bins_uncollected",
]
