import json
from pathlib import Path

import pytest

from adc.baselines import LcConfig
from adc.dps_core import DpsConfig, encode
from metrics.energy import EnergyModel
from metrics.op_counts import OpCounts
from reports.experiments import ENERGY_COLUMNS, SWEEP_COLUMNS, compare_samplers, sweep_deltas, sweep_frame, trace_frame
from reports.run_report import build_run_report
from signals.generators import gen_ramp
from signals.models import UniformSignal
from utils.exceptions import ConfigError, ValidationError

SCHEMA_PATH = Path(__file__).resolve().parent.parent / "docs" / "run_report.schema.json"
SWEEP_DELTAS = [2, 5, 10, 15, 20, 30]
CHIP_MODEL = EnergyModel(e_window_comparison=1.0, e_sar_bit=1.0, e_dac_setting=0.5, e_digital_cycle=0.2)


def _violations(values):
    """Relative size of every decrease between neighbours."""
    return [(a - b) / a for a, b in zip(values, values[1:]) if b < a]


def test_dc_run_report(dc, dps_cfg, adc):
    stream, ops = encode(dc, dps_cfg)
    report = build_run_report(dc, stream, ops, CHIP_MODEL)

    assert report.n_events == 2
    assert report.compression_factor == 250
    assert report.rms_error_volts <= 0.5 * adc.lsb
    assert report.sampling_rate_reduction == 500
    assert report.op_counts["nyquist"]["sar_conversions"] == 1000
    assert report.power_saving_factor == pytest.approx(0.6786)
    assert report.config["delta_code"] == 6


def test_run_report_keys_follow_schema(ecg, dps_cfg):
    schema = json.loads(SCHEMA_PATH.read_text(encoding="utf-8"))
    stream, ops = encode(ecg, dps_cfg)
    data = json.loads(json.dumps(build_run_report(ecg, stream, ops).to_dict()))

    assert set(data) == set(schema["required"]) == set(schema["properties"])
    assert set(data["config"]) == set(schema["properties"]["config"]["required"])
    for side in ("dps", "nyquist"):
        assert set(data["op_counts"][side]) == set(schema["$defs"]["op_counts"]["required"])
        assert set(data["energy"][side]) == set(schema["$defs"]["energy"]["required"])


def test_run_report_rejects_length_mismatch(dc, dps_cfg):
    stream, ops = encode(dc, dps_cfg)
    shorter = UniformSignal(fs_hz=dc.fs_hz, samples=dc.samples[:900])
    with pytest.raises(ValidationError) as exc:
        build_run_report(shorter, stream, ops)
    assert "900" in exc.value.message and "1000" in exc.value.message


@pytest.mark.parametrize("name", ["ecg", "sine10", "sine2"])
def test_sweep_curves_rise_with_delta(fixture_signals, name, dps_cfg):
    rows = sweep_deltas(fixture_signals[name], dps_cfg, SWEEP_DELTAS)

    for values in ([r.cf for r in rows], [r.rms_mv for r in rows]):
        violations = _violations(values)
        assert len(violations) <= 1
        assert all(v <= 0.02 for v in violations)


def test_sweep_dc_compression_is_flat(dc, dps_cfg):
    rows = sweep_deltas(dc, dps_cfg, [2, 10, 30])
    assert {r.cf for r in rows} == {250}
    assert {r.n_events for r in rows} == {2}


def test_sweep_keeps_order_and_duplicates(sine10, dps_cfg):
    deltas = [20, 5, 20, 10]
    serial = sweep_deltas(sine10, dps_cfg, deltas)
    parallel = sweep_deltas(sine10, dps_cfg, deltas, workers=3)

    assert [r.delta_mv for r in serial] == deltas
    assert parallel == serial
    assert serial[0] == serial[2]


def test_sweep_frame_columns(sine10, dps_cfg):
    frame = sweep_frame(sweep_deltas(sine10, dps_cfg, [5, 10]))
    assert list(frame.columns) == SWEEP_COLUMNS
    assert len(frame) == 2


@pytest.mark.parametrize("deltas", [[], [10, -5]])
def test_sweep_rejects_bad_delta_lists(sine10, dps_cfg, deltas):
    with pytest.raises(ConfigError):
        sweep_deltas(sine10, dps_cfg, deltas)


def test_compare_on_dc(dc, dps_cfg, adc):
    result = compare_samplers(dc, dps_cfg, LcConfig.from_millivolts(10, adc))
    assert result["dps_events"] == 2
    assert result["lc_events"] == 0
    assert result["nyquist_samples"] == 1000
    assert set(result["op_counts"]) == {"dps", "lc", "nyquist"}


def test_compare_on_filtered_square(lpf_square, dps_cfg, adc):
    result = compare_samplers(lpf_square, dps_cfg, LcConfig.from_millivolts(10, adc))
    assert result["dps_events"] < result["lc_events"] < result["nyquist_samples"]
    assert result["lc_up_events"] + result["lc_down_events"] == result["lc_events"]


def test_compare_on_ramp(dps_cfg, adc):
    ramp = gen_ramp(0.4, 1.4, 2000, 1000.0)
    result = compare_samplers(ramp, dps_cfg, LcConfig.from_millivolts(20, adc))
    assert abs(result["lc_events"] - 50) <= 1


def test_trace_frame(sine10):
    cfg = DpsConfig.from_millivolts(10)
    frame = trace_frame(sine10, cfg)
    stream, _ = encode(sine10, cfg)

    assert len(frame) == len(sine10)
    assert list(frame["mode"].iloc[:3]) == ["acquire0", "acquire1", "track"]
    assert frame["emitted_code"].notna().sum() == stream.n_events
    failures = int((frame["success"] == False).sum())  # noqa: E712
    # a failure on the last sample has no emitting cycle after it
    assert stream.n_events - 2 <= failures <= stream.n_events - 1


def test_run_report_rejects_foreign_op_counts(dc, dps_cfg):
    stream, ops = encode(dc, dps_cfg)
    with pytest.raises(ValidationError, match="10-bit"):
        build_run_report(dc, stream, ops + OpCounts(sar_bit_comparisons=3))


@pytest.mark.parametrize(
    "name,deltas",
    [("ecg", SWEEP_DELTAS), ("sine2", [10, 15, 20, 30])],
)
def test_energy_sweep_analog_falls_digital_stays(fixture_signals, dps_cfg, name, deltas):
    signal = fixture_signals[name]
    rows = sweep_deltas(signal, dps_cfg, deltas, model=CHIP_MODEL)

    assert all(r.energy.digital_cycle == pytest.approx(0.2 * len(signal)) for r in rows)
    analog = [r.energy.analog for r in rows]
    assert analog == sorted(analog, reverse=True)
    saving = [r.power_saving_factor for r in rows]
    assert saving == sorted(saving)


def test_energy_sweep_frame_columns(sine10, dps_cfg):
    frame = sweep_frame(sweep_deltas(sine10, dps_cfg, [5, 10], model=CHIP_MODEL))
    assert list(frame.columns) == SWEEP_COLUMNS + ENERGY_COLUMNS
    assert frame["e_total"].to_numpy() == pytest.approx((frame["e_analog"] + frame["e_digital_cycle"]).to_numpy())


def test_energy_sweep_in_processes_matches_serial(sine10, dps_cfg):
    serial = sweep_deltas(sine10, dps_cfg, [5, 10, 20], model=CHIP_MODEL)
    assert sweep_deltas(sine10, dps_cfg, [5, 10, 20], workers=2, model=CHIP_MODEL) == serial


def test_compare_reports_energy_and_lc_error(lpf_square, dps_cfg, adc):
    result = compare_samplers(lpf_square, dps_cfg, LcConfig.from_millivolts(10, adc), CHIP_MODEL)
    assert set(result["energy"]) == {"dps", "lc", "nyquist"}
    assert result["energy"]["nyquist"]["total"] == pytest.approx(10 * len(lpf_square))
    # the staircase sits at most one level spacing below the input
    assert 0 < result["lc_rms_mv"] < 10
    assert result["dps_rms_mv"] is not None


def test_trace_frame_input_codes(sine10):
    frame = trace_frame(sine10, DpsConfig.from_millivolts(10))
    selected = frame[frame["emitted_code"].notna()]
    assert (selected["emitted_code"] == selected["input_code"]).all()
