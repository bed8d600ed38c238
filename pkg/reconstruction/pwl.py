"""Decode event streams and rebuild uniform-rate waveforms.

Reconstruction is first-order piecewise-linear through the decoded anchor
points, evaluated in volts. Outside the anchor span the nearest anchor value
is held.
"""

import logging
from dataclasses import dataclass

import numpy as np

from adc.quantizer import dequantize
from signals.models import EventStream, UniformSignal, signal_from_array
from utils.exceptions import ReconstructionError, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AnchorPoint:
    t_index: int
    v: float


def decode_anchors(stream: EventStream) -> list[AnchorPoint]:
    """Absolute sample index and dequantized voltage of every event.

    Raises:
        ReconstructionError: If cumulative time does not strictly increase
    """
    adc = stream.config.adc
    anchors: list[AnchorPoint] = []
    t_index = 0
    for position, event in enumerate(stream.events):
        t_index += event.dt_cycles
        if anchors and t_index <= anchors[-1].t_index:
            raise ReconstructionError(
                f"event {position} does not advance time (t_index {t_index} after {anchors[-1].t_index})",
                {"event": position, "t_index": t_index},
            )
        anchors.append(AnchorPoint(t_index=t_index, v=dequantize(adc, event.code)))
    return anchors


def pwl_reconstruct(anchors: list[AnchorPoint], total_samples: int, fs_hz: float) -> UniformSignal:
    """Linear interpolation between anchors at every integer sample index.

    Raises:
        ReconstructionError: If there are no anchors or one lies past the end
    """
    if not anchors:
        raise ReconstructionError("no anchors to reconstruct from")

    last = anchors[-1].t_index
    if last >= total_samples:
        raise ReconstructionError(
            f"anchor at index {last} lies beyond total_samples {total_samples}",
            {"t_index": last, "total_samples": total_samples},
        )

    xp = np.array([a.t_index for a in anchors], dtype=float)
    fp = np.array([a.v for a in anchors], dtype=float)
    # np.interp holds the end values outside [xp[0], xp[-1]]
    values = np.interp(np.arange(total_samples, dtype=float), xp, fp)
    return signal_from_array(fs_hz, values)


def reconstruct_stream(stream: EventStream) -> UniformSignal:
    """Decode and reconstruct at the stream's original rate and length."""
    signal = pwl_reconstruct(decode_anchors(stream), stream.total_samples, stream.fs_hz)
    logger.debug("Reconstructed %d samples from %d events", len(signal), stream.n_events)
    return signal


def _aligned_difference(original: UniformSignal, reconstructed: UniformSignal) -> np.ndarray:
    if len(original) != len(reconstructed):
        raise ValidationError(
            f"length mismatch: original has {len(original)} samples, reconstructed has {len(reconstructed)}",
            {"original": len(original), "reconstructed": len(reconstructed)},
        )
    if original.fs_hz != reconstructed.fs_hz:
        raise ValidationError(
            f"sample rate mismatch: {original.fs_hz} Hz vs {reconstructed.fs_hz} Hz",
            {"original": original.fs_hz, "reconstructed": reconstructed.fs_hz},
        )
    if len(original) == 0:
        raise ValidationError("cannot compare empty signals")
    return original.as_array() - reconstructed.as_array()


def rms_error(original: UniformSignal, reconstructed: UniformSignal) -> float:
    """Root-mean-square error against the raw analog input, in volts."""
    diff = _aligned_difference(original, reconstructed)
    return float(np.sqrt(np.mean(diff**2)))


def max_abs_error(original: UniformSignal, reconstructed: UniformSignal) -> float:
    """Peak absolute reconstruction error, in volts."""
    diff = _aligned_difference(original, reconstructed)
    return float(np.max(np.abs(diff)))
