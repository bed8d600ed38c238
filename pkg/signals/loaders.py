"""Signal trace loaders.

Reads uniformly sampled traces exported as CSV (for example ECG records
converted from MIT-BIH) and writes reconstructed traces back out.
"""

import logging
import os
from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd

from utils.exceptions import DataLoadError, validate_dataframe

from .models import UniformSignal, signal_from_array

logger = logging.getLogger(__name__)

# Allowed relative deviation of any time step from the median step
UNIFORMITY_TOLERANCE = 1e-6

BUNDLED_ECG_PATH = Path(__file__).resolve().parent.parent / "data" / "ecg_excerpt.csv"


def _is_number(cell: str) -> bool:
    try:
        float(cell)
        return True
    except (TypeError, ValueError):
        return False


def _numeric_column(df: pd.DataFrame, column: int, first_line: int) -> np.ndarray:
    """Convert one column to floats, reporting the file line of a bad cell."""
    values = pd.to_numeric(df[column].str.strip(), errors="coerce")
    bad = values.isna() | ~np.isfinite(values.to_numpy(dtype=float, na_value=np.nan))
    if bad.any():
        position = int(np.flatnonzero(bad.to_numpy())[0])
        line = first_line + position
        raise DataLoadError(
            f"Non-numeric value {df[column].iloc[position]!r} at row {line}",
            {"row": line, "column": column},
        )
    return values.to_numpy(dtype=float)


def load_signal_csv(path: Union[str, Path], fs_hz_override: Optional[float] = None) -> UniformSignal:
    """Load a one- or two-column CSV trace.

    Two-column files are (time_s, volts) with a header row; the sample rate
    comes from the median time step. One-column files hold volts only, may
    start with a header row, and need fs_hz_override. Row numbers in errors
    are 1-based file lines.

    Raises:
        DataLoadError: Missing file, bad cell, non-uniform time base or no data
    """
    path = Path(path)
    if not os.path.exists(path):
        raise DataLoadError(f"Signal file not found: {path}", {"path": str(path)})

    try:
        df = pd.read_csv(
            path,
            header=None,
            dtype=str,
            encoding="utf-8",
            skip_blank_lines=True,
            keep_default_na=False,
        )
    except pd.errors.EmptyDataError:
        raise DataLoadError(f"Signal file is empty: {path}", {"path": str(path)})
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        raise DataLoadError(f"Cannot parse {path}: {e}", {"path": str(path)})

    validate_dataframe(df, min_rows=1, max_columns=2)

    if len(df.columns) == 2:
        signal = _from_two_columns(df, fs_hz_override)
    else:
        signal = _from_one_column(df, fs_hz_override)

    logger.info("Loaded %d samples at %.6g Hz from %s", len(signal), signal.fs_hz, path)
    return signal


def _from_two_columns(df: pd.DataFrame, fs_hz_override: Optional[float]) -> UniformSignal:
    if all(_is_number(cell) for cell in df.iloc[0]):
        raise DataLoadError("Two-column input needs a t,v header on line 1", {"row": 1})
    data = df.iloc[1:].reset_index(drop=True)
    validate_dataframe(data, min_rows=1)

    times = _numeric_column(data, 0, first_line=2)
    volts = _numeric_column(data, 1, first_line=2)

    if fs_hz_override is not None:
        return signal_from_array(fs_hz_override, volts)

    if len(times) < 2:
        raise DataLoadError("Need at least two samples to derive the sample rate")

    steps = np.diff(times)
    median_step = float(np.median(steps))
    if median_step <= 0:
        raise DataLoadError(f"Time column is not increasing (median step {median_step})")

    deviation = np.abs(steps - median_step) > UNIFORMITY_TOLERANCE * median_step
    if deviation.any():
        j = int(np.flatnonzero(deviation)[0])
        # step j ends at data row j + 1, i.e. file line j + 3
        line = j + 3
        raise DataLoadError(
            f"Non-uniform time base at row {line}: step {steps[j]:.9g} s vs median {median_step:.9g} s",
            {"row": line, "step": float(steps[j]), "median_step": median_step},
        )

    fs_hz = round(1.0 / median_step, 6)
    return signal_from_array(fs_hz, volts)


def _from_one_column(df: pd.DataFrame, fs_hz_override: Optional[float]) -> UniformSignal:
    if fs_hz_override is None:
        raise DataLoadError("Single-column signal files need an explicit sample rate")

    first_line = 1
    if not _is_number(df[0].iloc[0]):
        df = df.iloc[1:].reset_index(drop=True)
        first_line = 2
    validate_dataframe(df, min_rows=1)

    volts = _numeric_column(df, 0, first_line=first_line)
    return signal_from_array(fs_hz_override, volts)


def write_signal_csv(signal: UniformSignal, path: Union[str, Path]) -> None:
    """Write a two-column t,v CSV with LF line endings."""
    df = pd.DataFrame({"t": signal.times(), "v": signal.as_array()})
    df.to_csv(path, index=False, lineterminator="\n")
    logger.info("Wrote %d samples to %s", len(signal), path)


def load_bundled_ecg() -> UniformSignal:
    """The ECG excerpt shipped in data/."""
    return load_signal_csv(BUNDLED_ECG_PATH)
