"""Configuration settings for the DPS ADC simulator.

Defaults reproduce the designed chip: a 10-bit converter on a 1.8 V supply
sampling at 1 kHz with 10-bit timestamps.
"""

import os
from pathlib import Path
from typing import Any, Union

from dotenv import load_dotenv

from utils.exceptions import ConfigError
from utils.helpers import parse_key_value_lines

load_dotenv()

# Converter
ADC_BITS = int(os.getenv("DPS_ADC_BITS", "10"))
V_MIN = float(os.getenv("DPS_V_MIN", "0.0"))
V_MAX = float(os.getenv("DPS_V_MAX", "1.8"))
SAMPLE_RATE_HZ = float(os.getenv("DPS_SAMPLE_RATE_HZ", "1000"))
TIMESTAMP_BITS = int(os.getenv("DPS_TIMESTAMP_BITS", "10"))

# Level-crossing grid for `compare`
DEFAULT_LC_SPACING_MV = float(os.getenv("DPS_LC_SPACING_MV", "10"))

# Sweep parallelism
SWEEP_WORKERS = int(os.getenv("DPS_SWEEP_WORKERS", "1"))

LOG_LEVEL = os.getenv("DPS_LOG_LEVEL", "WARNING")

# Reserved. Every simulation here is deterministic, nothing consumes it.
SIM_SEED = os.getenv("DPS_SIM_SEED", "")

# Relative energy per operation (abstract units)
ENERGY_WEIGHTS = {
    "e_window_comparison": float(os.getenv("DPS_E_WINDOW_COMPARISON", "1.0")),
    "e_sar_bit": float(os.getenv("DPS_E_SAR_BIT", "1.0")),
    "e_dac_setting": float(os.getenv("DPS_E_DAC_SETTING", "0.5")),
    "e_digital_cycle": float(os.getenv("DPS_E_DIGITAL_CYCLE", "0.2")),
}

# Keys accepted in a --config file
CONFIG_FILE_KEYS = {
    "bits",
    "v_min",
    "v_max",
    "fs_hz",
    "timestamp_bits",
    "delta_mv",
    "lc_spacing_mv",
    *ENERGY_WEIGHTS.keys(),
}


def validate_config() -> tuple[bool, list[str]]:
    """Validate configuration settings.

    Returns:
        Tuple of (is_valid, list of errors)
    """
    errors = []

    if not 2 <= ADC_BITS <= 24:
        errors.append(f"DPS_ADC_BITS must be in [2, 24], got {ADC_BITS}")

    if V_MAX <= V_MIN:
        errors.append(f"DPS_V_MAX ({V_MAX}) must be greater than DPS_V_MIN ({V_MIN})")

    if SAMPLE_RATE_HZ <= 0:
        errors.append(f"DPS_SAMPLE_RATE_HZ must be positive, got {SAMPLE_RATE_HZ}")

    if not 2 <= TIMESTAMP_BITS <= 32:
        errors.append(f"DPS_TIMESTAMP_BITS must be in [2, 32], got {TIMESTAMP_BITS}")

    if SWEEP_WORKERS < 1:
        errors.append(f"DPS_SWEEP_WORKERS must be at least 1, got {SWEEP_WORKERS}")

    for key, weight in ENERGY_WEIGHTS.items():
        if weight < 0:
            errors.append(f"Energy weight {key} must be non-negative, got {weight}")

    return len(errors) == 0, errors


def get_config_summary() -> dict[str, Any]:
    """Get configuration summary for display.

    Returns:
        Dict with configuration info
    """
    is_valid, errors = validate_config()
    return {
        "adc_bits": ADC_BITS,
        "v_min": V_MIN,
        "v_max": V_MAX,
        "lsb_volts": (V_MAX - V_MIN) / 2**ADC_BITS if ADC_BITS > 0 else None,
        "sample_rate_hz": SAMPLE_RATE_HZ,
        "timestamp_bits": TIMESTAMP_BITS,
        "energy_weights": dict(ENERGY_WEIGHTS),
        "sweep_workers": SWEEP_WORKERS,
        "sim_seed_reserved": bool(SIM_SEED),
        "config_valid": is_valid,
        "config_errors": errors,
    }


def load_config_file(path: Union[str, Path]) -> dict[str, str]:
    """Read a key=value override file.

    Raises:
        ConfigError: On a missing file, bad syntax or an unknown key
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Config file not found: {path}")

    with open(path, "r", encoding="utf-8") as f:
        values = parse_key_value_lines(f, source=str(path))

    unknown = sorted(set(values) - CONFIG_FILE_KEYS)
    if unknown:
        raise ConfigError(
            f"{path}: unknown config keys {unknown}. Allowed: {sorted(CONFIG_FILE_KEYS)}"
        )
    return values
