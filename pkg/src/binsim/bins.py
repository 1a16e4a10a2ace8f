"""Bin fill dynamics and the green/yellow/red monitoring state machine."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import InvalidThresholds

BIN_CAPACITY = 25
YELLOW_THRESHOLD = 10


class BinState(str, enum.Enum):
    GREEN = "green"
    YELLOW = "yellow"
    RED = "red"

    def __str__(self) -> str:
        return self.value


def classify_state(
    level: int, yellow_threshold: int = YELLOW_THRESHOLD, capacity: int = BIN_CAPACITY
) -> BinState:
    if not 0 < yellow_threshold < capacity:
        raise InvalidThresholds(
            f"need 0 < yellow_threshold ({yellow_threshold}) < capacity ({capacity})"
        )
    if level < 0:
        raise ValueError(f"negative level {level}")
    if level >= capacity:
        return BinState.RED
    if level >= yellow_threshold:
        return BinState.YELLOW
    return BinState.GREEN


@dataclass(slots=True)
class Bin:
    id: int
    vertex: int
    owner: int
    capacity: int = BIN_CAPACITY
    yellow_threshold: int = YELLOW_THRESHOLD
    level: int = 0
    state: BinState = BinState.GREEN
    full_since: int | None = None

    def __post_init__(self):
        if not 0 <= self.level <= self.capacity:
            raise ValueError(f"bin {self.id}: level {self.level} outside [0, {self.capacity}]")
        self.state = classify_state(self.level, self.yellow_threshold, self.capacity)

    @property
    def is_full(self) -> bool:
        return self.state is BinState.RED


class FillModel:
    """How bin levels grow each tick. Subclasses decide one increment at a time."""

    def increments(self, bin_id: int, rng: random.Random) -> bool:
        raise NotImplementedError


@dataclass
class DeterministicUnit(FillModel):
    """Every bin gains one unit per tick until it saturates. Draws no randomness."""

    def increments(self, bin_id, rng):
        return True


@dataclass
class BernoulliPerBin(FillModel):
    """Bin ``i`` gains one unit with probability ``rates[i]`` each tick.

    One uniform draw is consumed per bin per tick, saturated or not, so the
    random stream stays aligned across runs. ``rates`` may be edited between
    ticks to script a scenario.
    """

    rates: list[float] = field(default_factory=list)

    def __post_init__(self):
        self.rates = [float(r) for r in self.rates]
        for i, r in enumerate(self.rates):
            if not 0.0 <= r <= 1.0:
                raise ValueError(f"fill rate {r} for bin {i} outside [0, 1]")

    @classmethod
    def uniform(
        cls, n: int, rng: random.Random, low: float = 0.2, high: float = 0.8
    ) -> BernoulliPerBin:
        return cls([rng.uniform(low, high) for _ in range(n)])

    def increments(self, bin_id, rng):
        return rng.random() < self.rates[bin_id]


def step_bin(bin: Bin, model: FillModel, rng: random.Random, tick: int) -> Bin:
    """Advance one bin by one tick, in place. Returns the same bin."""
    grows = model.increments(bin.id, rng)
    if grows and bin.level < bin.capacity:
        bin.level += 1
        bin.state = classify_state(bin.level, bin.yellow_threshold, bin.capacity)
        if bin.state is BinState.RED and bin.full_since is None:
            bin.full_since = tick
    return bin


def empty_bin(bin: Bin, tick: int) -> tuple[Bin, int]:
    removed = bin.level
    bin.level = 0
    bin.state = BinState.GREEN
    bin.full_since = None
    return bin, removed


def count_full(bins: Sequence[Bin]) -> int:
    return sum(1 for b in bins if b.state is BinState.RED)
