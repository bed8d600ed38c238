import pytest

import config
from utils.exceptions import ConfigError
from utils.helpers import parse_float_list, parse_key_value_lines, safe_float, safe_int


def test_defaults_are_valid():
    is_valid, errors = config.validate_config()
    assert is_valid, errors


def test_summary_reports_lsb():
    summary = config.get_config_summary()
    assert summary["lsb_volts"] == pytest.approx((config.V_MAX - config.V_MIN) / 2**config.ADC_BITS)
    assert summary["config_valid"] is True


def test_validate_config_flags_bad_values(monkeypatch):
    monkeypatch.setattr(config, "TIMESTAMP_BITS", 1)
    monkeypatch.setattr(config, "V_MAX", config.V_MIN)
    is_valid, errors = config.validate_config()
    assert not is_valid
    assert len(errors) == 2


def test_key_value_grammar():
    values = parse_key_value_lines(["# comment", "", "bits = 12", "v_max=3.3", "bits=8"])
    assert values == {"bits": "8", "v_max": "3.3"}


def test_key_value_line_without_equals_names_the_line():
    with pytest.raises(ConfigError) as exc:
        parse_key_value_lines(["bits=10", "oops"], source="run.cfg")
    assert "line 2" in exc.value.message


def test_config_file_loading(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("bits=12\ndelta_mv=5\n", encoding="utf-8")
    assert config.load_config_file(path) == {"bits": "12", "delta_mv": "5"}


def test_config_file_unknown_key(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("resolution=12\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        config.load_config_file(path)


def test_config_file_missing(tmp_path):
    with pytest.raises(ConfigError):
        config.load_config_file(tmp_path / "absent.cfg")


def test_number_helpers():
    assert parse_float_list("2, 5,10,") == [2.0, 5.0, 10.0]
    assert parse_float_list("") == []
    assert safe_int("12", "bits") == 12
    assert safe_float("0.5", "v_min") == 0.5
    with pytest.raises(ConfigError):
        parse_float_list("2,x")
    with pytest.raises(ConfigError):
        safe_int("1.5", "bits")
