"""Citizens, tariffs and the revenue ledger.

Revenue per collection is ``units * price_per_unit`` and the run total is
the plain sum over collections. Each completed dump trip costs a constant
``fixed_trip_cost``. All money is integral currency units (UC).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import SchemaError
from .world import Bounds, Position

PRICE_PER_UNIT = 500
_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Tariff:
    price_per_unit: int = PRICE_PER_UNIT
    fixed_trip_cost: int = 0

    def __post_init__(self):
        if self.price_per_unit < 0:
            raise SchemaError("price_per_unit", "must be >= 0")
        if self.fixed_trip_cost < 0:
            raise SchemaError("fixed_trip_cost", "must be >= 0")


@dataclass(slots=True)
class Citizen:
    id: int
    position: Position
    owned_bin: int
    balance_paid: int = 0
    step_length: float = 1.0


class LedgerEntry(NamedTuple):
    tick: int
    bin_id: int
    citizen_id: int
    units: int
    amount: int


def charge(units: int, tariff: Tariff) -> int:
    if units < 0:
        raise ValueError("cannot charge for negative units")
    return units * tariff.price_per_unit


def total_revenue(ledger: Iterable[LedgerEntry]) -> int:
    return sum(e.amount for e in ledger)


def trip_cost(trips: int, tariff: Tariff) -> int:
    if trips < 0:
        raise ValueError("negative trip count")
    return trips * tariff.fixed_trip_cost


def bill(citizen: Citizen, tick: int, bin_id: int, units: int, tariff: Tariff) -> LedgerEntry:
    """Charge ``citizen`` for a collection from their bin and return the entry."""
    amount = charge(units, tariff)
    citizen.balance_paid += amount
    return LedgerEntry(tick, bin_id, citizen.id, units, amount)


def move_citizen(citizen: Citizen, rng: random.Random, bounds: Bounds) -> Citizen:
    """Random walk step, clamped to the world. Cosmetic only.

    Always consumes exactly one draw, even for a zero step length.
    """
    heading = rng.random() * _TWO_PI
    step = citizen.step_length
    if step:
        x = citizen.position.x + step * math.cos(heading)
        y = citizen.position.y + step * math.sin(heading)
        citizen.position = Position(
            min(max(x, bounds.xmin), bounds.xmax), min(max(y, bounds.ymin), bounds.ymax)
        )
    return citizen
