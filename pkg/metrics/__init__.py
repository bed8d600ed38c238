"""Compression, operation-count and energy metrics."""

from .op_counts import OpCounts, sum_op_counts
from .compression import compression_factor, sampling_rate_reduction, events_per_second
from .energy import EnergyModel, EnergyBreakdown, energy_estimate, power_saving_factor, load_energy_model
