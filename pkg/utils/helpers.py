"""Common utility functions."""

from typing import Iterable, Optional

from .exceptions import ConfigError


def parse_key_value_lines(lines: Iterable[str], source: str = "<config>") -> dict[str, str]:
    """Parse `key=value` lines into a dict.

    Blank lines and lines starting with `#` are ignored. Keys and values
    are stripped of surrounding whitespace; a repeated key keeps the last value.

    Raises:
        ConfigError: If a line has no `=` or an empty key
    """
    values: dict[str, str] = {}
    for line_number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigError(
                f"{source}: line {line_number} is not a key=value pair: {raw.rstrip()!r}",
                {"line": line_number},
            )
        values[key] = value.strip()
    return values


def parse_float_list(text: Optional[str]) -> list[float]:
    """Parse a comma-separated list of numbers, e.g. `2,5,10,20`."""
    if not text:
        return []

    items = [item.strip() for item in text.split(",")]
    try:
        return [float(item) for item in items if item]
    except ValueError as e:
        raise ConfigError(f"Invalid number list {text!r}: {e}")


def safe_int(value: str, name: str) -> int:
    """Convert a config string to int, naming the key on failure."""
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be an integer, got {value!r}", {name: value})


def safe_float(value: str, name: str) -> float:
    """Convert a config string to float, naming the key on failure."""
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be a number, got {value!r}", {name: value})
