"""Data-saving metrics."""

from utils.exceptions import MetricsError


def compression_factor(
    n_nyquist_samples: int,
    sample_bits: int,
    n_events: int,
    event_bits: int,
) -> float:
    """Nyquist bit volume divided by event bit volume.

    An event carries its amplitude code and its timestamp, so event_bits is
    normally sample_bits + timestamp_bits.

    Raises:
        MetricsError: If there are no events or any argument is non-positive
    """
    if n_events < 1:
        raise MetricsError("compression factor is undefined for zero events", {"n_events": n_events})
    for name, value in (
        ("n_nyquist_samples", n_nyquist_samples),
        ("sample_bits", sample_bits),
        ("event_bits", event_bits),
    ):
        if value <= 0:
            raise MetricsError(f"{name} must be positive, got {value}", {name: value})

    return (n_nyquist_samples * sample_bits) / (n_events * event_bits)


def sampling_rate_reduction(n_nyquist_samples: int, n_events: int) -> float:
    """How many Nyquist samples each emitted event replaces."""
    if n_events < 1:
        raise MetricsError("sampling rate reduction is undefined for zero events")
    return n_nyquist_samples / n_events


def events_per_second(n_events: int, n_samples: int, fs_hz: float) -> float:
    """Average output event rate over the input duration."""
    if n_samples < 1 or fs_hz <= 0:
        raise MetricsError("event rate needs a non-empty input with a positive sample rate")
    return n_events * fs_hz / n_samples
