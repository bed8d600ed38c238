"""Dynamic predictive sampling state machine.

Each clock cycle the digital logic extrapolates the next code from the last
two (P = 2*L1 - L2), forms a window of +/- delta codes around it, and the
comparator checks the analog input against the DAC'd window rails. Inside
the window nothing is converted or emitted. Outside it (or when the
timestamp counter is about to overflow) the sampler runs a failure episode:
the failed sample and the next one are SAR-converted, and the second code is
emitted with the cycle count since the previous emission.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterator, Optional

from metrics.op_counts import OpCounts, sum_op_counts
from signals.models import EventRecord, EventStream, UniformSignal
from utils.exceptions import ConfigError

from .quantizer import AdcConfig, dequantize, sar_convert

logger = logging.getLogger(__name__)


class Mode(str, Enum):
    ACQUIRE0 = "acquire0"
    ACQUIRE1 = "acquire1"
    TRACK = "track"


@dataclass(frozen=True)
class DpsConfig:
    """Converter plus tracking-window half-width and timestamp counter width."""

    adc: AdcConfig = field(default_factory=AdcConfig)
    delta_volts: float = 0.010
    timestamp_bits: int = 10
    emit_startup_pair: bool = True

    def __post_init__(self):
        if not (isinstance(self.delta_volts, (int, float)) and math.isfinite(self.delta_volts)):
            raise ConfigError(f"delta_volts must be a finite number, got {self.delta_volts!r}")
        if self.delta_volts <= 0:
            raise ConfigError(f"delta must be positive, got {self.delta_volts} V", {"delta_volts": self.delta_volts})
        # A failure episode spans two cycles, so one timestamp bit cannot encode it
        if isinstance(self.timestamp_bits, bool) or not isinstance(self.timestamp_bits, int):
            raise ConfigError(f"timestamp_bits must be an integer, got {self.timestamp_bits!r}")
        if not 2 <= self.timestamp_bits <= 32:
            raise ConfigError(
                f"timestamp_bits must be in [2, 32], got {self.timestamp_bits}",
                {"timestamp_bits": self.timestamp_bits},
            )

    @classmethod
    def from_millivolts(
        cls,
        delta_mv: float,
        bits: int = 10,
        v_min: float = 0.0,
        v_max: float = 1.8,
        timestamp_bits: int = 10,
        emit_startup_pair: bool = True,
    ) -> "DpsConfig":
        return cls(
            adc=AdcConfig(bits=bits, v_min=v_min, v_max=v_max),
            delta_volts=delta_mv / 1000.0,
            timestamp_bits=timestamp_bits,
            emit_startup_pair=emit_startup_pair,
        )

    @property
    def delta_code(self) -> int:
        """Delta in codes, rounded half away from zero, at least 1."""
        return max(1, int(math.floor(self.delta_volts / self.adc.lsb + 0.5)))

    @property
    def max_dt(self) -> int:
        return 2**self.timestamp_bits - 1

    @property
    def event_bits(self) -> int:
        """Bits per emitted event: amplitude code plus timestamp."""
        return self.adc.bits + self.timestamp_bits


@dataclass(frozen=True)
class DpsState:
    mode: Mode = Mode.ACQUIRE0
    l1: int = 0
    l2: int = 0
    counter: int = 0


INITIAL_STATE = DpsState()


@dataclass(frozen=True)
class StepOutcome:
    """What one clock cycle did.

    prediction, lower and upper are the debug outputs of a Track step
    (predicted code and window rails); they are None in acquisition steps.
    """

    emitted: Optional[EventRecord] = None
    prediction_success: Optional[bool] = None
    ops: OpCounts = field(default_factory=OpCounts)
    prediction: Optional[int] = None
    lower: Optional[int] = None
    upper: Optional[int] = None


@dataclass(frozen=True)
class StepTrace:
    index: int
    v: float
    mode: Mode
    outcome: StepOutcome


def _clamp(code: int, bits: int) -> int:
    return min(max(code, 0), 2**bits - 1)


def predict(l1: int, l2: int, bits: int) -> int:
    """Linear extrapolation from the last two codes, clamped to the code range."""
    return _clamp((l1 << 1) - l2, bits)


def thresholds(p: int, delta_code: int, bits: int) -> tuple[int, int]:
    """Upper and lower window rails (ut, lt) around the prediction."""
    return _clamp(p + delta_code, bits), _clamp(p - delta_code, bits)


def decide(v: float, ut: int, lt: int, cfg: AdcConfig) -> bool:
    """Strict window test: LT < v < UT with both rails DAC'd to volts."""
    return dequantize(cfg, lt) < v < dequantize(cfg, ut)


@lru_cache(maxsize=None)
def _conversion_ops(bit_trials: int) -> OpCounts:
    return OpCounts(sar_bit_comparisons=bit_trials, sar_conversions=1, digital_cycles=1)


_TRACK_OPS = OpCounts(window_comparisons=2, dac_settings=2, digital_cycles=1)


@lru_cache(maxsize=None)
def _failed_track_ops(bit_trials: int) -> OpCounts:
    return _TRACK_OPS + OpCounts(sar_bit_comparisons=bit_trials, sar_conversions=1)


def _start_failure_episode(state: DpsState, code: int, counter: int) -> DpsState:
    # The failed sample is converted but not emitted; it becomes L2 after the
    # next (emitting) conversion.
    return DpsState(mode=Mode.ACQUIRE1, l1=code, l2=state.l1, counter=counter)


def step(state: DpsState, v: float, cfg: DpsConfig) -> tuple[DpsState, StepOutcome]:
    """Advance the sampler by one input sample."""
    bits = cfg.adc.bits

    if state.mode is Mode.ACQUIRE0:
        code, trials = sar_convert(cfg.adc, v)
        emitted = EventRecord(dt_cycles=state.counter, code=code) if cfg.emit_startup_pair else None
        new_state = DpsState(mode=Mode.ACQUIRE1, l1=code, l2=state.l2, counter=0)
        return new_state, StepOutcome(emitted=emitted, ops=_conversion_ops(trials))

    counter = state.counter + 1

    if state.mode is Mode.ACQUIRE1:
        code, trials = sar_convert(cfg.adc, v)
        new_state = DpsState(mode=Mode.TRACK, l1=code, l2=state.l1, counter=0)
        return new_state, StepOutcome(
            emitted=EventRecord(dt_cycles=counter, code=code),
            ops=_conversion_ops(trials),
        )

    p = predict(state.l1, state.l2, bits)
    ut, lt = thresholds(p, cfg.delta_code, bits)
    inside = decide(v, ut, lt, cfg.adc)

    # The emission lands one cycle after a failure, so the last cycle that may
    # still succeed is max_dt - 2.
    if inside and counter < cfg.max_dt - 1:
        new_state = DpsState(mode=Mode.TRACK, l1=p, l2=state.l1, counter=counter)
        return new_state, StepOutcome(
            prediction_success=True,
            ops=_TRACK_OPS,
            prediction=p,
            lower=lt,
            upper=ut,
        )

    code, trials = sar_convert(cfg.adc, v)
    new_state = _start_failure_episode(state, code, counter)
    return new_state, StepOutcome(
        prediction_success=False,
        ops=_failed_track_ops(trials),
        prediction=p,
        lower=lt,
        upper=ut,
    )


def trace(signal: UniformSignal, cfg: DpsConfig) -> Iterator[StepTrace]:
    """Run the sampler over a signal, yielding every step."""
    signal.require_samples()
    state = INITIAL_STATE
    for index, v in enumerate(signal.samples):
        mode = state.mode
        state, outcome = step(state, v, cfg)
        yield StepTrace(index=index, v=v, mode=mode, outcome=outcome)


def encode(signal: UniformSignal, cfg: DpsConfig) -> tuple[EventStream, OpCounts]:
    """Encode a uniformly sampled trace into a DPS event stream."""
    signal.require_samples()

    events = []
    ops = []
    for record in trace(signal, cfg):
        ops.append(record.outcome.ops)
        if record.outcome.emitted is not None:
            events.append(record.outcome.emitted)

    stream = EventStream(
        config=cfg,
        fs_hz=signal.fs_hz,
        events=tuple(events),
        total_samples=len(signal),
    )
    totals = sum_op_counts(ops)
    logger.debug(
        "Encoded %d samples into %d events (delta_code=%d, sar_conversions=%d)",
        len(signal),
        len(events),
        cfg.delta_code,
        totals.sar_conversions,
    )
    return stream, totals
