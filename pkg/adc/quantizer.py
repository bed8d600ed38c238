"""Ideal behavioral ADC/DAC pair.

Mid-tread transfer function with rail clamping: a code c covers the input
interval [v_min + (c - 0.5) lsb, v_min + (c + 0.5) lsb). The comparator and
the DAC are noiseless and offset-free. Inputs are single-ended.
"""

import math
from dataclasses import dataclass

import numpy as np

from utils.exceptions import ConfigError, ValidationError


@dataclass(frozen=True)
class AdcConfig:
    """Converter resolution and full-scale range."""

    bits: int = 10
    v_min: float = 0.0
    v_max: float = 1.8

    def __post_init__(self):
        if isinstance(self.bits, bool) or not isinstance(self.bits, int):
            raise ConfigError(f"bits must be an integer, got {self.bits!r}")
        if not 2 <= self.bits <= 24:
            raise ConfigError(f"bits must be in [2, 24], got {self.bits}", {"bits": self.bits})
        if not (math.isfinite(self.v_min) and math.isfinite(self.v_max)):
            raise ConfigError("v_min and v_max must be finite")
        if self.v_max <= self.v_min:
            raise ConfigError(
                f"v_max ({self.v_max}) must be greater than v_min ({self.v_min})",
                {"v_min": self.v_min, "v_max": self.v_max},
            )

    @property
    def lsb(self) -> float:
        """Least significant bit voltage."""
        return (self.v_max - self.v_min) / 2**self.bits

    @property
    def max_code(self) -> int:
        return 2**self.bits - 1


def _level(cfg: AdcConfig, v: float) -> float:
    # Input position in code units, shifted half an LSB for mid-tread rounding
    if math.isnan(v):
        raise ValidationError("Cannot quantize NaN")
    return (v - cfg.v_min) / cfg.lsb + 0.5


def quantize(cfg: AdcConfig, v: float) -> int:
    """Convert a voltage to the nearest code, clamping at the rails.

    Ties round away from zero. Out-of-range inputs saturate.
    """
    level = _level(cfg, v)
    if level < 1.0:
        return 0
    if level >= cfg.max_code:
        return cfg.max_code
    return int(math.floor(level))


def dequantize(cfg: AdcConfig, code: int) -> float:
    """Convert a code back to the DAC output voltage.

    Raises:
        ValidationError: If code is outside [0, 2^bits - 1]
    """
    if isinstance(code, bool) or not isinstance(code, int):
        try:
            as_int = int(code)
        except (TypeError, ValueError):
            raise ValidationError(f"code must be an integer, got {code!r}")
        if as_int != code:
            raise ValidationError(f"code must be an integer, got {code!r}")
        code = as_int
    if not 0 <= code <= cfg.max_code:
        raise ValidationError(
            f"code {code} out of range [0, {cfg.max_code}]",
            {"code": code, "bits": cfg.bits},
        )
    return cfg.v_min + code * cfg.lsb


def sar_convert(cfg: AdcConfig, v: float) -> tuple[int, int]:
    """Successive-approximation conversion, one comparator decision per bit.

    The trial levels are offset by half an LSB so the result matches
    `quantize` exactly.

    Returns:
        Tuple of (code, comparator decisions)
    """
    level = _level(cfg, v)
    code = 0
    comparisons = 0
    for bit in range(cfg.bits - 1, -1, -1):
        trial = code | (1 << bit)
        comparisons += 1
        if level >= trial:
            code = trial
    return code, comparisons


def sar_convert_array(cfg: AdcConfig, values) -> np.ndarray:
    """Bitwise SAR search run on a whole trace at once; codes equal `sar_convert`."""
    levels = (np.asarray(values, dtype=float) - cfg.v_min) / cfg.lsb + 0.5
    if np.isnan(levels).any():
        raise ValidationError("Cannot quantize NaN")

    codes = np.zeros(levels.shape, dtype=np.int64)
    for bit in range(cfg.bits - 1, -1, -1):
        trial = codes | (1 << bit)
        codes = np.where(levels >= trial, trial, codes)
    return codes


def sar_comparisons(cfg: AdcConfig) -> int:
    """Comparator activations per SAR conversion."""
    return cfg.bits
