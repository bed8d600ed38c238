"""Test waveform generators.

Traces are built on a sample-index grid with numpy; the low-pass is a
single-pole IIR run through scipy.signal.lfilter.
"""

import numpy as np
from scipy import signal as sps

from utils.exceptions import ValidationError, validate_positive

from .models import UniformSignal, signal_from_array


def _sample_count(fs_hz: float, duration_s: float) -> int:
    validate_positive("fs_hz", fs_hz)
    validate_positive("duration_s", duration_s)
    n = int(round(duration_s * fs_hz))
    if n < 1:
        raise ValidationError(
            f"duration {duration_s} s at {fs_hz} Hz yields no samples",
            {"duration_s": duration_s, "fs_hz": fs_hz},
        )
    return n


def _check_nyquist(freq_hz: float, fs_hz: float) -> None:
    if freq_hz < 0 or freq_hz >= fs_hz / 2:
        raise ValidationError(
            f"freq_hz must be in [0, fs/2), got {freq_hz} with fs={fs_hz}",
            {"freq_hz": freq_hz, "fs_hz": fs_hz},
        )


def gen_sine(
    freq_hz: float,
    amplitude_vpp: float,
    offset: float,
    fs_hz: float,
    duration_s: float,
) -> UniformSignal:
    """Sinusoid: offset + (amplitude_vpp / 2) * sin(2*pi*freq*i/fs)."""
    n = np.arange(_sample_count(fs_hz, duration_s), dtype=float)
    _check_nyquist(freq_hz, fs_hz)

    values = offset + (amplitude_vpp / 2) * np.sin(2 * np.pi * freq_hz * n / fs_hz)
    return signal_from_array(fs_hz, values)


def gen_square(freq_hz: float, amplitude_vpp: float, offset: float, fs_hz: float, duration_s: float) -> UniformSignal:
    """Ideal square wave, high for the first half of each period."""
    n = np.arange(_sample_count(fs_hz, duration_s), dtype=float)
    _check_nyquist(freq_hz, fs_hz)

    half = amplitude_vpp / 2
    phase = np.mod(freq_hz * n / fs_hz, 1.0)
    return signal_from_array(fs_hz, np.where(phase < 0.5, offset + half, offset - half))


def lpf_alpha(cutoff_hz: float, fs_hz: float) -> float:
    """Smoothing factor of the single-pole low-pass."""
    return float(1 - np.exp(-2 * np.pi * cutoff_hz / fs_hz))


def gen_lpf_square(
    freq_hz: float,
    amplitude_vpp: float,
    offset: float,
    cutoff_hz: float,
    fs_hz: float,
    duration_s: float,
) -> UniformSignal:
    """Square wave through a first-order low-pass.

    y[i] = alpha * x[i] + (1 - alpha) * y[i-1], with y[-1] = x[0] so the
    trace starts settled on the first plateau.
    """
    validate_positive("cutoff_hz", cutoff_hz)
    square = gen_square(freq_hz, amplitude_vpp, offset, fs_hz, duration_s).as_array()
    alpha = lpf_alpha(cutoff_hz, fs_hz)

    # Direct-form state holding y[-1] = x[0]
    zi = [(1 - alpha) * square[0]]
    filtered, _ = sps.lfilter([alpha], [1.0, alpha - 1.0], square, zi=zi)
    return signal_from_array(fs_hz, filtered)


def gen_ramp(start_v: float, stop_v: float, n_samples: int, fs_hz: float) -> UniformSignal:
    """Straight line from start_v to stop_v over n_samples (both ends included)."""
    validate_positive("fs_hz", fs_hz)
    if n_samples < 2:
        raise ValidationError(f"a ramp needs at least 2 samples, got {n_samples}")
    return signal_from_array(fs_hz, np.linspace(start_v, stop_v, n_samples))


def gen_code_ramp(start_code: int, stop_code: int, lsb: float, v_min: float, fs_hz: float) -> UniformSignal:
    """Ramp with slope exactly one code per sample, sampled at code centers."""
    validate_positive("fs_hz", fs_hz)
    direction = 1 if stop_code >= start_code else -1
    codes = np.arange(start_code, stop_code + direction, direction)
    return signal_from_array(fs_hz, v_min + codes * lsb)


def gen_step(low_v: float, high_v: float, step_index: int, n_samples: int, fs_hz: float) -> UniformSignal:
    """Flat at low_v, jumping to high_v at step_index."""
    validate_positive("fs_hz", fs_hz)
    if not 0 <= step_index < n_samples:
        raise ValidationError(f"step_index {step_index} outside [0, {n_samples})")
    return signal_from_array(fs_hz, np.where(np.arange(n_samples) < step_index, low_v, high_v))
