"""Event stream file format.

A self-describing CSV: `#key=value` header lines, a `dt,code` column row,
then one decimal `dt_cycles,code` row per event. LF line endings, no
trailing whitespace. See docs/FORMATS.md.
"""

import logging
from pathlib import Path
from typing import Union

from adc.dps_core import DpsConfig
from adc.quantizer import AdcConfig
from utils.exceptions import ConfigError, EventStreamError

from .models import EventRecord, EventStream

logger = logging.getLogger(__name__)

FORMAT_VERSION = "1"
COLUMN_ROW = "dt,code"
HEADER_FIELDS = (
    "version",
    "bits",
    "v_min",
    "v_max",
    "fs_hz",
    "delta_volts",
    "timestamp_bits",
    "total_samples",
)
# Written only when it differs from the default
OPTIONAL_FIELDS = ("emit_startup_pair",)


def dumps_events(stream: EventStream) -> str:
    """Serialize a stream to the event file text."""
    cfg = stream.config
    header = {
        "version": FORMAT_VERSION,
        "bits": str(cfg.adc.bits),
        "v_min": repr(float(cfg.adc.v_min)),
        "v_max": repr(float(cfg.adc.v_max)),
        "fs_hz": repr(float(stream.fs_hz)),
        "delta_volts": repr(float(cfg.delta_volts)),
        "timestamp_bits": str(cfg.timestamp_bits),
        "total_samples": str(stream.total_samples),
    }
    lines = [f"#{key}={value}" for key, value in header.items()]
    if not cfg.emit_startup_pair:
        lines.append("#emit_startup_pair=0")
    lines.append(COLUMN_ROW)
    lines.extend(f"{e.dt_cycles},{e.code}" for e in stream.events)
    return "\n".join(lines) + "\n"


def _parse_int(value: str, name: str, line_number: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise EventStreamError(f"line {line_number}: {name} is not an integer: {value!r}", line_number)


def _parse_float(value: str, name: str, line_number: int) -> float:
    try:
        return float(value)
    except ValueError:
        raise EventStreamError(f"line {line_number}: {name} is not a number: {value!r}", line_number)


def loads_events(text: str, source: str = "<events>") -> EventStream:
    """Parse event file text.

    Raises:
        EventStreamError: Unknown version, missing header field, malformed
            row, or dt/code outside the range the header implies
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()

    header: dict[str, tuple[str, int]] = {}
    position = 0
    while position < len(lines) and lines[position].startswith("#"):
        key, sep, value = lines[position][1:].partition("=")
        if not sep:
            raise EventStreamError(f"{source}: line {position + 1}: malformed header line", position + 1)
        header[key.strip()] = (value.strip(), position + 1)
        position += 1

    if "version" not in header:
        raise EventStreamError(f"{source}: header field 'version' missing")
    if header["version"][0] != FORMAT_VERSION:
        raise EventStreamError(f"{source}: unknown version {header['version'][0]!r}", header["version"][1])
    missing = [name for name in HEADER_FIELDS if name not in header]
    if missing:
        raise EventStreamError(f"{source}: header field missing: {', '.join(missing)}")

    def field_int(name: str) -> int:
        value, line_number = header[name]
        return _parse_int(value, name, line_number)

    def field_float(name: str) -> float:
        value, line_number = header[name]
        return _parse_float(value, name, line_number)

    emit_startup_pair = True
    if "emit_startup_pair" in header:
        emit_startup_pair = field_int("emit_startup_pair") != 0

    try:
        config = DpsConfig(
            adc=AdcConfig(bits=field_int("bits"), v_min=field_float("v_min"), v_max=field_float("v_max")),
            delta_volts=field_float("delta_volts"),
            timestamp_bits=field_int("timestamp_bits"),
            emit_startup_pair=emit_startup_pair,
        )
    except ConfigError as e:
        raise EventStreamError(f"{source}: invalid header: {e.message}")

    fs_hz = field_float("fs_hz")
    total_samples = field_int("total_samples")

    if position >= len(lines) or lines[position] != COLUMN_ROW:
        raise EventStreamError(f"{source}: line {position + 1}: expected column row {COLUMN_ROW!r}", position + 1)
    position += 1

    max_dt = config.max_dt
    max_code = config.adc.max_code
    events = []
    for offset, row in enumerate(lines[position:]):
        line_number = position + offset + 1
        parts = row.split(",")
        if len(parts) != 2:
            raise EventStreamError(f"{source}: line {line_number}: expected 'dt,code', got {row!r}", line_number)
        dt = _parse_int(parts[0], "dt", line_number)
        code = _parse_int(parts[1], "code", line_number)
        if not 0 <= dt <= max_dt:
            raise EventStreamError(
                f"{source}: line {line_number}: dt out of range: {dt} not in [0, {max_dt}]", line_number
            )
        if not 0 <= code <= max_code:
            raise EventStreamError(
                f"{source}: line {line_number}: code out of range: {code} not in [0, {max_code}]", line_number
            )
        if events and dt == 0:
            raise EventStreamError(
                f"{source}: line {line_number}: dt must be at least 1 after the first event", line_number
            )
        events.append(EventRecord(dt_cycles=dt, code=code))

    return EventStream(config=config, fs_hz=fs_hz, events=tuple(events), total_samples=total_samples)


def write_events(path: Union[str, Path], stream: EventStream) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dumps_events(stream))
    logger.info("Wrote %d events to %s", stream.n_events, path)


def read_events(path: Union[str, Path]) -> EventStream:
    path = Path(path)
    if not path.is_file():
        raise EventStreamError(f"Event file not found: {path}")
    with open(path, "r", encoding="utf-8", newline="") as f:
        text = f.read()
    stream = loads_events(text, source=str(path))
    logger.info("Read %d events from %s", stream.n_events, path)
    return stream
