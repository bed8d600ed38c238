"""Behavioral converter models: quantizer, DPS sampler and baselines."""

from .quantizer import AdcConfig, quantize, dequantize, sar_convert, sar_convert_array, sar_comparisons
from .dps_core import DpsConfig, DpsState, StepOutcome, predict, thresholds, decide, step, trace, encode
from .baselines import LcConfig, LcEvent, nyquist_encode, lc_encode, lc_reconstruct
