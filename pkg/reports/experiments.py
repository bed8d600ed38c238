"""Delta sweeps, sampler comparisons and step traces."""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import partial
from typing import Optional

import pandas as pd

from adc.baselines import LcConfig, lc_encode, lc_reconstruct, nyquist_encode
from adc.dps_core import DpsConfig, encode, trace
from adc.quantizer import quantize
from metrics.compression import compression_factor
from metrics.energy import EnergyBreakdown, EnergyModel, energy_estimate, power_saving_factor
from reconstruction.pwl import reconstruct_stream, rms_error
from signals.models import UniformSignal
from utils.exceptions import ConfigError

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ["delta_mv", "cf", "rms_mv", "n_events"]
# Appended when the sweep carries an energy model
ENERGY_COLUMNS = [
    "e_window_comparison",
    "e_sar_bit",
    "e_dac_setting",
    "e_digital_cycle",
    "e_analog",
    "e_total",
    "power_saving_factor",
]


@dataclass(frozen=True)
class SweepRow:
    delta_mv: float
    cf: float
    rms_mv: float
    n_events: int
    energy: Optional[EnergyBreakdown] = None
    power_saving_factor: Optional[float] = None

    def as_record(self) -> dict:
        record = {
            "delta_mv": self.delta_mv,
            "cf": self.cf,
            "rms_mv": self.rms_mv,
            "n_events": self.n_events,
        }
        if self.energy is not None:
            record.update({f"e_{name}": value for name, value in self.energy.categories().items()})
            record["e_analog"] = self.energy.analog
            record["e_total"] = self.energy.total
            record["power_saving_factor"] = self.power_saving_factor
        return record


def _sweep_point(
    signal: UniformSignal,
    cfg: DpsConfig,
    delta_mv: float,
    model: Optional[EnergyModel] = None,
    nyquist_total: float = 0.0,
) -> SweepRow:
    point_cfg = replace(cfg, delta_volts=delta_mv / 1000.0)
    stream, ops = encode(signal, point_cfg)
    reconstructed = reconstruct_stream(stream)

    energy = saving = None
    if model is not None:
        energy = energy_estimate(ops, model)
        saving = power_saving_factor(energy.total, nyquist_total) if nyquist_total > 0 else None

    row = SweepRow(
        delta_mv=delta_mv,
        cf=compression_factor(len(signal), point_cfg.adc.bits, stream.n_events, point_cfg.event_bits),
        rms_mv=rms_error(signal, reconstructed) * 1000.0,
        n_events=stream.n_events,
        energy=energy,
        power_saving_factor=saving,
    )
    logger.debug("sweep point delta=%s mV: %d events", delta_mv, row.n_events)
    return row


def sweep_deltas(
    signal: UniformSignal,
    cfg: DpsConfig,
    deltas_mv: list[float],
    workers: int = 1,
    model: Optional[EnergyModel] = None,
) -> list[SweepRow]:
    """Evaluate each delta independently; rows keep the input order.

    Duplicate deltas give duplicate rows. With a model every row also
    carries the DPS energy breakdown and the saving against Nyquist SAR.
    With workers > 1 the points run in separate processes.

    Raises:
        ConfigError: If the delta list is empty or a delta is not positive
    """
    if not deltas_mv:
        raise ConfigError("empty delta list")
    bad = [d for d in deltas_mv if not d > 0]
    if bad:
        raise ConfigError(f"deltas must be positive, got {bad}")

    nyquist_total = 0.0
    if model is not None:
        _, nyquist_ops = nyquist_encode(signal, cfg.adc)
        nyquist_total = energy_estimate(nyquist_ops, model).total

    point = partial(_sweep_point, signal, cfg, model=model, nyquist_total=nyquist_total)
    if workers > 1 and len(deltas_mv) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(deltas_mv))) as pool:
            rows = list(pool.map(point, deltas_mv))
    else:
        rows = [point(d) for d in deltas_mv]

    logger.info("Swept %d deltas over %d samples", len(rows), len(signal))
    return rows


def sweep_frame(rows: list[SweepRow]) -> pd.DataFrame:
    columns = list(SWEEP_COLUMNS)
    if rows and all(r.energy is not None for r in rows):
        columns += ENERGY_COLUMNS
    return pd.DataFrame([r.as_record() for r in rows], columns=columns)


def compare_samplers(
    signal: UniformSignal,
    dps_cfg: DpsConfig,
    lc_cfg: LcConfig,
    model: Optional[EnergyModel] = None,
) -> dict:
    """Side-by-side counts, reconstruction error and energy for DPS, LC and Nyquist."""
    model = model or EnergyModel()
    stream, dps_ops = encode(signal, dps_cfg)
    lc_events, lc_ops = lc_encode(signal, lc_cfg)
    codes, nyquist_ops = nyquist_encode(signal, dps_cfg.adc)

    staircase = lc_reconstruct(lc_events, signal.samples[0], len(signal), lc_cfg, fs_hz=signal.fs_hz)
    dps_rms_mv = rms_error(signal, reconstruct_stream(stream)) * 1000.0 if stream.n_events else None

    return {
        "n_samples": len(signal),
        "delta_mv": dps_cfg.delta_volts * 1000.0,
        "lc_spacing_mv": lc_cfg.level_spacing_volts * 1000.0,
        "dps_events": stream.n_events,
        "lc_events": len(lc_events),
        "lc_up_events": sum(1 for e in lc_events if e.direction > 0),
        "lc_down_events": sum(1 for e in lc_events if e.direction < 0),
        "nyquist_samples": len(codes),
        "dps_rms_mv": dps_rms_mv,
        "lc_rms_mv": rms_error(signal, staircase) * 1000.0,
        "op_counts": {
            "dps": dps_ops.to_dict(),
            "lc": lc_ops.to_dict(),
            "nyquist": nyquist_ops.to_dict(),
        },
        "energy": {
            "dps": energy_estimate(dps_ops, model).to_dict(),
            "lc": energy_estimate(lc_ops, model).to_dict(),
            "nyquist": energy_estimate(nyquist_ops, model).to_dict(),
        },
    }


def trace_frame(signal: UniformSignal, cfg: DpsConfig) -> pd.DataFrame:
    """Per-sample sampler decisions, for plotting selected points and windows."""
    rows = []
    for record in trace(signal, cfg):
        outcome = record.outcome
        rows.append(
            {
                "index": record.index,
                "t": record.index / signal.fs_hz,
                "v": record.v,
                "input_code": quantize(cfg.adc, record.v),
                "mode": record.mode.value,
                "prediction": outcome.prediction,
                "lower": outcome.lower,
                "upper": outcome.upper,
                "success": outcome.prediction_success,
                "emitted_code": outcome.emitted.code if outcome.emitted else None,
                "dt_cycles": outcome.emitted.dt_cycles if outcome.emitted else None,
            }
        )
    return pd.DataFrame(rows)
