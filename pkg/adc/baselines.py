"""Reference samplers: Nyquist-rate SAR conversion and level crossing.

Level crossing is evaluated synchronously on the input grid; several levels
crossed between two samples produce a burst of events at the same index.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property

from metrics.op_counts import OpCounts
from signals.models import UniformSignal
from utils.exceptions import ConfigError, ValidationError

from .quantizer import AdcConfig, sar_comparisons, sar_convert_array


@dataclass(frozen=True)
class LcConfig:
    """Uniform level grid v_min + k * level_spacing_volts inside the ADC range."""

    adc: AdcConfig = field(default_factory=AdcConfig)
    level_spacing_volts: float = 0.010

    def __post_init__(self):
        if not self.level_spacing_volts >= self.adc.lsb:
            raise ConfigError(
                f"level spacing {self.level_spacing_volts} V is below one LSB ({self.adc.lsb} V)",
                {"level_spacing_volts": self.level_spacing_volts},
            )

    @classmethod
    def from_millivolts(cls, spacing_mv: float, adc: AdcConfig) -> "LcConfig":
        return cls(adc=adc, level_spacing_volts=spacing_mv / 1000.0)

    @cached_property
    def max_level(self) -> int:
        """Highest k with level(k) <= v_max."""
        k = int(math.floor((self.adc.v_max - self.adc.v_min) / self.level_spacing_volts))
        while self.level(k + 1) <= self.adc.v_max:
            k += 1
        while k > 0 and self.level(k) > self.adc.v_max:
            k -= 1
        return k

    def level(self, k: int) -> float:
        return self.adc.v_min + k * self.level_spacing_volts

    def level_index(self, v: float) -> int:
        """Level at or below v, decided by the same comparisons as the crossing test."""
        top = self.max_level
        k = int(math.floor((v - self.adc.v_min) / self.level_spacing_volts))
        k = min(max(k, 0), top)
        while k < top and v >= self.level(k + 1):
            k += 1
        while k > 0 and v < self.level(k):
            k -= 1
        return k


@dataclass(frozen=True)
class LcEvent:
    t_index: int
    direction: int
    level_index: int


def nyquist_encode(signal: UniformSignal, cfg: AdcConfig) -> tuple[list[int], OpCounts]:
    """Convert every sample with a full SAR conversion."""
    signal.require_samples()
    codes = sar_convert_array(cfg, signal.as_array()).tolist()
    n = len(codes)
    ops = OpCounts(sar_bit_comparisons=n * sar_comparisons(cfg), sar_conversions=n)
    return codes, ops


def lc_encode(signal: UniformSignal, cfg: LcConfig) -> tuple[list[LcEvent], OpCounts]:
    """Level-crossing sampling with the initial level taken from the first sample.

    Each sample costs two comparisons (the levels just above and below);
    every additional event in a burst costs one more.
    """
    signal.require_samples()
    k = cfg.level_index(signal.samples[0])
    top = cfg.max_level
    events: list[LcEvent] = []
    comparisons = 0

    for i, v in enumerate(signal.samples):
        comparisons += 2
        if i == 0:
            continue
        burst = 0
        while k < top and v >= cfg.level(k + 1):
            k += 1
            events.append(LcEvent(t_index=i, direction=1, level_index=k))
            burst += 1
        while k > 0 and v < cfg.level(k):
            events.append(LcEvent(t_index=i, direction=-1, level_index=k))
            k -= 1
            burst += 1
        comparisons += max(burst - 1, 0)

    return events, OpCounts(window_comparisons=comparisons)


def lc_reconstruct(
    events: list[LcEvent],
    first_sample: float,
    n_samples: int,
    cfg: LcConfig,
    fs_hz: float = 1.0,
) -> UniformSignal:
    """Replay events into the staircase of the current level, one value per sample."""
    if n_samples < 1:
        raise ValidationError("n_samples must be at least 1")

    k = cfg.level_index(first_sample)
    samples = []
    pending = iter(sorted(events, key=lambda e: e.t_index))
    event = next(pending, None)
    for i in range(n_samples):
        while event is not None and event.t_index <= i:
            k = event.level_index if event.direction > 0 else event.level_index - 1
            event = next(pending, None)
        samples.append(cfg.level(k))
    return UniformSignal(fs_hz=fs_hz, samples=tuple(samples))
