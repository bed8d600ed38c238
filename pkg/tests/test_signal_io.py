"""Trace loaders, generators and the event file codec."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adc.dps_core import DpsConfig, encode
from adc.quantizer import AdcConfig
from signals.event_io import dumps_events, loads_events, read_events, write_events
from signals.generators import gen_lpf_square, gen_sine, gen_square
from signals.loaders import load_bundled_ecg, load_signal_csv, write_signal_csv
from signals.models import EventRecord, EventStream
from utils.exceptions import DataLoadError, EventStreamError, ValidationError

HEADER = (
    "#version=1\n#bits=10\n#v_min=0.0\n#v_max=1.8\n#fs_hz=1000.0\n"
    "#delta_volts=0.01\n#timestamp_bits=10\n#total_samples=1000\n"
)


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


# Loaders

def test_bundled_ecg_fixture():
    signal = load_bundled_ecg()
    assert len(signal) == 10000
    assert signal.fs_hz == 1000.0
    assert 0.25 < max(signal.samples) - min(signal.samples) < 0.4


def test_two_column_csv_derives_sample_rate(tmp_path):
    path = _write(tmp_path, "sig.csv", "t,v\n0.000,0.5\n0.002,0.6\n0.004,0.7\n")
    signal = load_signal_csv(path)
    assert signal.fs_hz == 500.0
    assert signal.samples == pytest.approx((0.5, 0.6, 0.7))


def test_two_column_csv_without_header_is_rejected(tmp_path):
    path = _write(tmp_path, "bare2.csv", "0.000,0.5\n0.001,0.6\n0.002,0.7\n")
    with pytest.raises(DataLoadError) as exc:
        load_signal_csv(path)
    assert "header" in exc.value.message
    assert exc.value.details["row"] == 1


def test_single_column_csv_needs_a_rate(tmp_path):
    path = _write(tmp_path, "volts.csv", "v\n0.1\n0.2\n")
    with pytest.raises(DataLoadError):
        load_signal_csv(path)

    signal = load_signal_csv(path, fs_hz_override=250.0)
    assert signal.samples == pytest.approx((0.1, 0.2))
    assert signal.fs_hz == 250.0


def test_single_column_header_is_optional(tmp_path):
    path = _write(tmp_path, "bare.csv", "0.1\n0.2\n0.3\n")
    assert len(load_signal_csv(path, fs_hz_override=1000.0)) == 3


def test_non_numeric_cell_reports_row(tmp_path):
    path = _write(tmp_path, "bad.csv", "t,v\n0.000,0.5\n0.001,0.6\n0.002,oops\n")
    with pytest.raises(DataLoadError) as exc:
        load_signal_csv(path)
    assert "row 4" in exc.value.message
    assert exc.value.details["row"] == 4


def test_two_row_uniform_file(tmp_path):
    path = _write(tmp_path, "two.csv", "t,v\n0.000,0.9\n0.001,0.9\n")
    signal = load_signal_csv(path)
    assert signal.fs_hz == 1000.0
    assert signal.samples == pytest.approx((0.9, 0.9))


def test_doubling_step_is_reported_at_its_first_row(tmp_path):
    path = _write(tmp_path, "steps.csv", "t,v\n0.000,0.9\n0.001,0.9\n0.003,0.9\n")
    with pytest.raises(DataLoadError) as exc:
        load_signal_csv(path)
    assert "row 3" in exc.value.message


def test_non_uniform_time_base_reports_row(tmp_path):
    path = _write(tmp_path, "jitter.csv", "t,v\n0.000,0.5\n0.001,0.5\n0.002,0.5\n0.0045,0.5\n0.0055,0.5\n")
    with pytest.raises(DataLoadError) as exc:
        load_signal_csv(path)
    assert exc.value.details["row"] == 5


@pytest.mark.parametrize("text", ["", "t,v\n"])
def test_empty_files_are_rejected(tmp_path, text):
    path = _write(tmp_path, "empty.csv", text)
    with pytest.raises(DataLoadError):
        load_signal_csv(path)


def test_missing_file(tmp_path):
    with pytest.raises(DataLoadError):
        load_signal_csv(tmp_path / "nope.csv")


def test_signal_csv_round_trip(tmp_path, sine10):
    path = tmp_path / "sine.csv"
    write_signal_csv(sine10, path)

    assert path.read_bytes().startswith(b"t,v\n")
    assert b"\r\n" not in path.read_bytes()
    loaded = load_signal_csv(path)
    assert loaded.fs_hz == sine10.fs_hz
    assert loaded.samples == pytest.approx(sine10.samples)


# Generators

def test_sine_generator():
    signal = gen_sine(10, 0.3, 0.9, 1000.0, 2.0)
    assert len(signal) == 2000
    assert signal.samples[0] == 0.9
    assert signal.samples[25] == pytest.approx(1.05)
    assert max(signal.samples) == pytest.approx(1.05)
    assert min(signal.samples) == pytest.approx(0.75)


def test_slow_full_swing_and_flat_sines():
    slow = gen_sine(1, 1.0, 0.9, 1000.0, 2.0)
    assert len(slow) == 2000
    assert max(slow.samples) == pytest.approx(1.4)
    assert min(slow.samples) == pytest.approx(0.4)

    flat = gen_sine(1, 0.0, 0.9, 1000.0, 1.0)
    assert set(flat.samples) == {0.9}


def test_square_generator_edges():
    signal = gen_square(5, 1.0, 0.9, 1000.0, 1.0)
    assert signal.samples[99] == pytest.approx(1.4)
    assert signal.samples[100] == pytest.approx(0.4)
    assert signal.samples[200] == pytest.approx(1.4)


def test_lpf_square_starts_settled_and_lags():
    signal = gen_lpf_square(5, 1.0, 0.9, 20, 1000.0, 1.0)
    assert signal.samples[0] == pytest.approx(1.4)
    assert 0.4 < signal.samples[101] < 1.4
    assert signal.samples[199] == pytest.approx(0.4, abs=1e-3)


@pytest.mark.parametrize("freq_hz, fs_hz", [(10, 1000.0), (1, 1000.0), (50, 2000.0)])
def test_sine_peak_to_peak_is_exact_on_quarter_period_grids(freq_hz, fs_hz):
    signal = gen_sine(freq_hz, 0.3, 0.9, fs_hz, 2.0)
    assert max(signal.samples) - min(signal.samples) == pytest.approx(0.3, abs=1e-9)


def test_generators_are_deterministic():
    assert gen_sine(7, 0.2, 0.9, 1000.0, 1.0) == gen_sine(7, 0.2, 0.9, 1000.0, 1.0)


def test_lpf_with_huge_cutoff_is_the_square():
    filtered = gen_lpf_square(5, 1.0, 0.9, 1e6, 1000.0, 1.0)
    assert filtered.samples == pytest.approx(gen_square(5, 1.0, 0.9, 1000.0, 1.0).samples)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"freq_hz": 600},
        {"freq_hz": -1},
        {"fs_hz": 0},
        {"duration_s": 0},
    ],
)
def test_generator_arguments_are_validated(kwargs):
    args = {"freq_hz": 10, "amplitude_vpp": 0.3, "offset": 0.9, "fs_hz": 1000.0, "duration_s": 1.0}
    args.update(kwargs)
    with pytest.raises(ValidationError):
        gen_sine(**args)


# Event files

def test_event_file_layout(dc, dps_cfg):
    stream, _ = encode(dc, dps_cfg)
    assert dumps_events(stream) == HEADER + "dt,code\n0,512\n1,512\n"


def test_suppressed_startup_is_recorded_in_header(dc):
    stream, _ = encode(dc, DpsConfig(emit_startup_pair=False))
    text = dumps_events(stream)
    assert "#emit_startup_pair=0\n" in text
    assert loads_events(text) == stream


def test_empty_event_list_is_valid_file():
    stream = loads_events(HEADER + "dt,code\n")
    assert stream.n_events == 0
    assert stream.total_samples == 1000


@pytest.mark.parametrize(
    "text, fragment, line",
    [
        (HEADER.replace("#version=1", "#version=2") + "dt,code\n", "unknown version", 1),
        (HEADER.replace("#bits=10\n", "") + "dt,code\n", "header field missing", None),
        (HEADER + "dt,code\n0,512\n1024,512\n", "dt out of range", 11),
        (HEADER + "dt,code\n0,512\n1,1024\n", "code out of range", 11),
        (HEADER + "dt,code\n0,512\n1;512\n", "expected 'dt,code'", 11),
        (HEADER + "dt,code\n0,512\n0,513\n", "at least 1 after the first event", 11),
        (HEADER + "0,512\n", "expected column row", 9),
    ],
)
def test_corrupt_event_files(text, fragment, line):
    with pytest.raises(EventStreamError) as exc:
        loads_events(text)
    assert fragment in exc.value.message
    assert exc.value.line_number == line


def test_event_file_round_trip_on_disk(tmp_path, ecg, dps_cfg):
    stream, _ = encode(ecg, dps_cfg)
    path = tmp_path / "ev.csv"
    write_events(path, stream)

    assert b"\r" not in path.read_bytes()
    assert read_events(path) == stream


def test_three_event_round_trip(tmp_path):
    events = (EventRecord(0, 512), EventRecord(1, 515), EventRecord(7, 490))
    stream = EventStream(config=DpsConfig(), fs_hz=1000.0, events=events, total_samples=20)
    path = tmp_path / "three.csv"
    write_events(path, stream)

    loaded = read_events(path)
    assert loaded.events == events
    assert loaded.config == stream.config
    assert loaded.total_samples == 20


def test_missing_event_file(tmp_path):
    with pytest.raises(EventStreamError):
        read_events(tmp_path / "missing.csv")


def test_stream_rejects_cumulative_overrun():
    with pytest.raises(EventStreamError):
        EventStream(config=DpsConfig(), fs_hz=1000.0, events=(EventRecord(0, 1), EventRecord(5, 1)), total_samples=5)


@st.composite
def event_streams(draw):
    bits = draw(st.integers(min_value=2, max_value=16))
    ts_bits = draw(st.integers(min_value=2, max_value=16))
    v_min = draw(st.floats(min_value=-5, max_value=5, allow_nan=False))
    span = draw(st.floats(min_value=1e-3, max_value=10, allow_nan=False))
    adc = AdcConfig(bits=bits, v_min=v_min, v_max=v_min + span)
    cfg = DpsConfig(
        adc=adc,
        delta_volts=draw(st.floats(min_value=1e-6, max_value=1.0, allow_nan=False)),
        timestamp_bits=ts_bits,
        emit_startup_pair=draw(st.booleans()),
    )
    max_dt = 2**ts_bits - 1
    first = draw(st.lists(st.integers(min_value=0, max_value=max_dt), max_size=1))
    dts = first + draw(st.lists(st.integers(min_value=1, max_value=max_dt), max_size=49 if first else 0))
    codes = draw(st.lists(st.integers(min_value=0, max_value=2**bits - 1), min_size=len(dts), max_size=len(dts)))
    total = sum(dts) + 1 + draw(st.integers(min_value=0, max_value=100))
    fs_hz = draw(st.floats(min_value=1e-3, max_value=1e9, allow_nan=False))
    events = tuple(EventRecord(dt, code) for dt, code in zip(dts, codes))
    return EventStream(config=cfg, fs_hz=fs_hz, events=events, total_samples=total)


@settings(max_examples=1000, deadline=None)
@given(event_streams())
def test_event_streams_survive_serialization(stream):
    assert loads_events(dumps_events(stream)) == stream
