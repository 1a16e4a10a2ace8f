"""Collection trucks that follow planned routes, one stop per tick."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence, Union

from .bins import Bin, empty_bin
from .errors import CapacityWouldExceed, NotEnRoute, RouteMismatch, TruckBusy
from .routing import DUMP_STOP, PICKUP, Route

TRUCK_CAPACITY = 100


class TruckStatus(str, enum.Enum):
    IDLE = "idle"
    EN_ROUTE = "enroute"

    def __str__(self) -> str:
        return self.value


class CollectionEvent(NamedTuple):
    tick: int
    truck_id: int
    bin_id: int
    units: int
    vertex: int


class DumpEvent(NamedTuple):
    tick: int
    truck_id: int
    units: int


Event = Union[CollectionEvent, DumpEvent]


@dataclass(slots=True)
class Truck:
    id: int
    vertex: int
    capacity: int = TRUCK_CAPACITY
    load: int = 0
    route: Route | None = None
    cursor: int = 0
    odometer: float = 0.0
    trips: int = 0

    @property
    def status(self) -> TruckStatus:
        if self.route is not None and self.cursor < len(self.route.visits) - 1:
            return TruckStatus.EN_ROUTE
        return TruckStatus.IDLE

    @property
    def idle(self) -> bool:
        return self.status is TruckStatus.IDLE


def assign_route(truck: Truck, route: Route) -> Truck:
    if not truck.idle:
        raise TruckBusy(f"truck {truck.id} is already en route")
    if route.visits[0].vertex != truck.vertex:
        raise RouteMismatch(
            f"route starts at vertex {route.visits[0].vertex}, "
            f"truck {truck.id} is at {truck.vertex}"
        )
    truck.route = route
    truck.cursor = 0
    return truck


def collect(truck: Truck, bin: Bin, tick: int) -> tuple[Truck, Bin, CollectionEvent]:
    if truck.vertex != bin.vertex:
        raise ValueError(f"truck {truck.id} at {truck.vertex} cannot reach bin {bin.id}")
    if truck.load + bin.level > truck.capacity:
        raise CapacityWouldExceed(
            f"tick {tick}: truck {truck.id} load {truck.load} + bin {bin.id} "
            f"level {bin.level} > capacity {truck.capacity}"
        )
    bin, removed = empty_bin(bin, tick)
    truck.load += removed
    return truck, bin, CollectionEvent(tick, truck.id, bin.id, removed, bin.vertex)


def advance(
    truck: Truck, tick: int, bins: Mapping[int, Bin] | Sequence[Bin] = ()
) -> tuple[Truck, list[Event]]:
    """Move the truck to its next stop and perform the work planned there.

    ``bins`` is indexed by bin id and is only consulted at pickup stops.
    A pickup of an already empty bin emits nothing.
    """
    if truck.idle:
        raise NotEnRoute(f"truck {truck.id} has no route to follow")
    route = truck.route
    leg = route.legs[truck.cursor]
    truck.cursor += 1
    stop = route.visits[truck.cursor]
    truck.vertex = stop.vertex
    truck.odometer += leg.distance

    events: list[Event] = []
    if stop.kind == PICKUP:
        _, _, ev = collect(truck, bins[stop.bin_id], tick)
        if ev.units > 0:
            events.append(ev)
    elif stop.kind == DUMP_STOP and truck.load > 0:
        events.append(DumpEvent(tick, truck.id, truck.load))
        truck.load = 0
        truck.trips += 1

    if truck.cursor == len(route.visits) - 1:
        truck.route = None
        truck.cursor = 0
    return truck, events
