"""Custom exceptions for the DPS ADC simulator.

Provides standardized error types for consistent error handling
across all modules.
"""

from typing import Optional


class DpsSimError(Exception):
    """Base exception for all DPS simulator errors."""

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class ValidationError(DpsSimError):
    """Input validation failed."""
    pass


class ConfigError(ValidationError):
    """Invalid converter, sampler or energy configuration."""
    pass


class DataLoadError(DpsSimError):
    """Failed to load a signal trace from file."""
    pass


class EventStreamError(DpsSimError):
    """Event stream is invalid or an event file is corrupt."""

    def __init__(self, message: str, line_number: Optional[int] = None, details: Optional[dict] = None):
        super().__init__(message, details)
        self.line_number = line_number


class ReconstructionError(DpsSimError):
    """Waveform reconstruction from anchors failed."""
    pass


class MetricsError(DpsSimError):
    """A metric is undefined for the given inputs."""
    pass


def validate_positive(name: str, value: float) -> None:
    """Validate that a numeric parameter is strictly positive.

    Raises:
        ValidationError: If value is not > 0
    """
    if not value > 0:
        raise ValidationError(f"{name} must be positive, got {value}", {name: value})


def validate_dataframe(df, min_rows: int = 1, max_columns: Optional[int] = None) -> None:
    """Validate DataFrame has required structure.

    Args:
        df: pandas DataFrame to validate
        min_rows: Minimum number of rows required
        max_columns: Maximum number of columns allowed

    Raises:
        DataLoadError: If DataFrame fails validation
    """
    if df is None or len(df) < min_rows:
        rows = 0 if df is None else len(df)
        raise DataLoadError(
            f"Signal file has only {rows} data rows. Minimum required: {min_rows}"
        )

    if max_columns is not None and len(df.columns) > max_columns:
        raise DataLoadError(
            f"Signal file has {len(df.columns)} columns. Expected at most {max_columns}"
        )
