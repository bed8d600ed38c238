"""Domain types shared by the samplers and the codec."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Sequence

import numpy as np

from utils.exceptions import EventStreamError, ValidationError

if TYPE_CHECKING:
    from adc.dps_core import DpsConfig


@dataclass(frozen=True)
class UniformSignal:
    """A uniformly sampled analog trace. Sample i is taken at i / fs_hz."""

    fs_hz: float
    samples: tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        try:
            fs_hz = float(self.fs_hz)
        except (TypeError, ValueError):
            raise ValidationError(f"fs_hz must be a number, got {self.fs_hz!r}")
        if not (math.isfinite(fs_hz) and fs_hz > 0):
            raise ValidationError(f"fs_hz must be positive, got {self.fs_hz}")
        object.__setattr__(self, "fs_hz", fs_hz)
        object.__setattr__(self, "samples", tuple(float(v) for v in self.samples))

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def duration_s(self) -> float:
        return len(self.samples) / self.fs_hz

    def as_array(self) -> np.ndarray:
        return np.asarray(self.samples, dtype=float)

    def times(self) -> np.ndarray:
        return np.arange(len(self.samples)) / self.fs_hz

    def require_samples(self) -> None:
        """Simulation entry points reject empty traces."""
        if not self.samples:
            raise ValidationError("Signal has no samples")


@dataclass(frozen=True)
class EventRecord:
    """One emitted sample: cycles since the previous event and its code."""

    dt_cycles: int
    code: int


@dataclass(frozen=True)
class EventStream:
    """The compressed form: config snapshot, ordered events, input length."""

    config: "DpsConfig"
    fs_hz: float
    events: tuple[EventRecord, ...]
    total_samples: int

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(self, "fs_hz", float(self.fs_hz))
        if not self.fs_hz > 0:
            raise EventStreamError(f"fs_hz must be positive, got {self.fs_hz}")
        if self.total_samples < 0:
            raise EventStreamError(f"total_samples must be non-negative, got {self.total_samples}")

        max_dt = 2**self.config.timestamp_bits - 1
        max_code = self.config.adc.max_code
        elapsed = 0
        for position, event in enumerate(self.events):
            if not 0 <= event.dt_cycles <= max_dt:
                raise EventStreamError(
                    f"event {position}: dt {event.dt_cycles} out of range [0, {max_dt}]"
                )
            if not 0 <= event.code <= max_code:
                raise EventStreamError(
                    f"event {position}: code {event.code} out of range [0, {max_code}]"
                )
            if position > 0 and event.dt_cycles == 0:
                raise EventStreamError(f"event {position}: dt 0 repeats the time of the previous event")
            elapsed += event.dt_cycles

        if self.events and elapsed > self.total_samples - 1:
            raise EventStreamError(
                f"cumulative dt {elapsed} exceeds the last sample index {self.total_samples - 1}"
            )

    def __len__(self) -> int:
        return len(self.events)

    @property
    def n_events(self) -> int:
        return len(self.events)

    def dt_cycles(self) -> list[int]:
        return [e.dt_cycles for e in self.events]

    def codes(self) -> list[int]:
        return [e.code for e in self.events]


def signal_from_array(fs_hz: float, values: Sequence[float]) -> UniformSignal:
    return UniformSignal(fs_hz=fs_hz, samples=tuple(float(v) for v in values))
