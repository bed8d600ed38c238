"""Run reports and experiment drivers."""

from .run_report import RunReport, build_run_report
from .experiments import ENERGY_COLUMNS, SWEEP_COLUMNS, SweepRow, sweep_deltas, sweep_frame, compare_samplers, trace_frame
