"""Relative energy model standing in for circuit-level power analysis.

Energies are abstract units per operation. The default weighting makes one
comparator decision cost 1.0, a DAC update 0.5 and a digital control cycle
0.2, which is enough to reproduce the qualitative DPS-versus-SAR crossover:
DPS costs more than a Nyquist SAR converter when the window is so narrow
that almost every prediction fails.
"""

from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Optional, Union

from config import ENERGY_WEIGHTS, load_config_file
from utils.exceptions import ConfigError, MetricsError
from utils.helpers import safe_float

from .op_counts import OpCounts

# EnergyModel field -> OpCounts field it multiplies
CATEGORY_COUNTS = {
    "e_window_comparison": "window_comparisons",
    "e_sar_bit": "sar_bit_comparisons",
    "e_dac_setting": "dac_settings",
    "e_digital_cycle": "digital_cycles",
}


@dataclass(frozen=True)
class EnergyModel:
    """Energy per operation for each converter block."""

    e_window_comparison: float = ENERGY_WEIGHTS["e_window_comparison"]
    e_sar_bit: float = ENERGY_WEIGHTS["e_sar_bit"]
    e_dac_setting: float = ENERGY_WEIGHTS["e_dac_setting"]
    e_digital_cycle: float = ENERGY_WEIGHTS["e_digital_cycle"]

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not value >= 0:
                raise ConfigError(f"Energy weight {f.name} must be non-negative, got {value}", {f.name: value})

    @classmethod
    def from_mapping(cls, values: dict[str, str], base: Optional["EnergyModel"] = None) -> "EnergyModel":
        """Override a base model with the energy keys present in values."""
        base = base or cls()
        weights = asdict(base)
        for key in CATEGORY_COUNTS:
            if key in values:
                weights[key] = safe_float(values[key], key)
        return cls(**weights)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class EnergyBreakdown:
    """Energy per category and the total."""

    window_comparison: float = 0.0
    sar_bit: float = 0.0
    dac_setting: float = 0.0
    digital_cycle: float = 0.0
    total: float = 0.0

    # Share of the total per category
    shares: dict = field(default_factory=dict)

    def categories(self) -> dict[str, float]:
        return {
            "window_comparison": self.window_comparison,
            "sar_bit": self.sar_bit,
            "dac_setting": self.dac_setting,
            "digital_cycle": self.digital_cycle,
        }

    @property
    def analog(self) -> float:
        """Comparator and DAC energy, everything but the digital logic."""
        return self.window_comparison + self.sar_bit + self.dac_setting

    def to_dict(self) -> dict:
        return {**self.categories(), "total": self.total}


def load_energy_model(path: Union[str, Path]) -> EnergyModel:
    """Read energy weights from a key=value file; missing keys keep defaults."""
    values = load_config_file(path)
    return EnergyModel.from_mapping(values)


def energy_estimate(ops: OpCounts, model: EnergyModel) -> EnergyBreakdown:
    """Dot product of operation counts and per-operation energies."""
    parts = {
        key[2:]: getattr(ops, count_name) * getattr(model, key)
        for key, count_name in CATEGORY_COUNTS.items()
    }
    breakdown = EnergyBreakdown(**parts)
    breakdown.total = sum(parts.values())
    if breakdown.total > 0:
        breakdown.shares = {name: value / breakdown.total for name, value in parts.items()}
    return breakdown


def power_saving_factor(e_dps: float, e_reference: float) -> float:
    """1 - e_dps / e_reference; negative when DPS spends more.

    Raises:
        MetricsError: If the reference energy is not positive
    """
    if not e_reference > 0:
        raise MetricsError(f"reference energy must be positive, got {e_reference}", {"e_reference": e_reference})
    return 1 - e_dps / e_reference
