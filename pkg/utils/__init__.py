"""Utility functions for the DPS ADC simulator."""

from .helpers import parse_key_value_lines, parse_float_list, safe_int, safe_float
