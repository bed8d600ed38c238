"""Run reports: one DPS encode evaluated against the Nyquist SAR reference.

JSON keys are stable; docs/run_report.schema.json describes them. RMS error
is measured against the raw analog input, not its Nyquist-quantized copy.
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Optional

from adc.baselines import nyquist_encode
from adc.dps_core import DpsConfig
from metrics.compression import compression_factor, events_per_second, sampling_rate_reduction
from metrics.energy import EnergyModel, energy_estimate, power_saving_factor
from metrics.op_counts import OpCounts
from reconstruction.pwl import max_abs_error, reconstruct_stream, rms_error
from signals.models import EventStream, UniformSignal
from utils.exceptions import ValidationError

logger = logging.getLogger(__name__)

REPORT_VERSION = 1


@dataclass
class RunReport:
    """Everything needed to judge one encode: data saving, error, energy."""

    config: dict
    n_samples: int
    n_events: int
    compression_factor: float
    rms_error_volts: float
    max_abs_error_volts: float
    events_per_second: float
    sampling_rate_reduction: float
    op_counts: dict = field(default_factory=dict)
    energy: dict = field(default_factory=dict)
    power_saving_factor: Optional[float] = None
    energy_model: dict = field(default_factory=dict)
    report_version: int = REPORT_VERSION

    def to_dict(self) -> dict:
        return asdict(self)


def config_echo(cfg: DpsConfig, fs_hz: float) -> dict:
    return {
        "bits": cfg.adc.bits,
        "v_min": cfg.adc.v_min,
        "v_max": cfg.adc.v_max,
        "lsb_volts": cfg.adc.lsb,
        "fs_hz": fs_hz,
        "delta_volts": cfg.delta_volts,
        "delta_mv": cfg.delta_volts * 1000.0,
        "delta_code": cfg.delta_code,
        "timestamp_bits": cfg.timestamp_bits,
        "emit_startup_pair": cfg.emit_startup_pair,
    }


def build_run_report(
    signal: UniformSignal,
    stream: EventStream,
    dps_ops: OpCounts,
    model: Optional[EnergyModel] = None,
) -> RunReport:
    """Evaluate a stream against the input it was encoded from.

    Raises:
        ValidationError: If the input length differs from the stream's, or the
            op counts could not have come from this sampler
    """
    if len(signal) != stream.total_samples:
        raise ValidationError(
            f"input has {len(signal)} samples but the event stream covers {stream.total_samples}",
            {"input_samples": len(signal), "total_samples": stream.total_samples},
        )

    cfg = stream.config
    if not dps_ops.is_consistent(cfg.adc.bits):
        raise ValidationError(
            f"op counts do not fit a {cfg.adc.bits}-bit sampler: {dps_ops.to_dict()}",
            {"op_counts": dps_ops.to_dict()},
        )

    model = model or EnergyModel()

    reconstructed = reconstruct_stream(stream)
    _, nyquist_ops = nyquist_encode(signal, cfg.adc)

    dps_energy = energy_estimate(dps_ops, model)
    nyquist_energy = energy_estimate(nyquist_ops, model)
    saving = power_saving_factor(dps_energy.total, nyquist_energy.total) if nyquist_energy.total > 0 else None

    report = RunReport(
        config=config_echo(cfg, signal.fs_hz),
        n_samples=len(signal),
        n_events=stream.n_events,
        compression_factor=compression_factor(len(signal), cfg.adc.bits, stream.n_events, cfg.event_bits),
        rms_error_volts=rms_error(signal, reconstructed),
        max_abs_error_volts=max_abs_error(signal, reconstructed),
        events_per_second=events_per_second(stream.n_events, len(signal), signal.fs_hz),
        sampling_rate_reduction=sampling_rate_reduction(len(signal), stream.n_events),
        op_counts={"dps": dps_ops.to_dict(), "nyquist": nyquist_ops.to_dict()},
        energy={"dps": dps_energy.to_dict(), "nyquist": nyquist_energy.to_dict()},
        power_saving_factor=saving,
        energy_model=model.to_dict(),
    )
    logger.info(
        "delta=%.3g mV: %d events, CF %.3f, RMS %.4g mV",
        cfg.delta_volts * 1000.0,
        report.n_events,
        report.compression_factor,
        report.rms_error_volts * 1000.0,
    )
    return report
