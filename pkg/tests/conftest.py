"""Shared fixtures: the bundled ECG excerpt, stimulus signals and default configs."""

import pytest

from adc.dps_core import DpsConfig
from adc.quantizer import AdcConfig
from signals.generators import gen_lpf_square, gen_sine
from signals.loaders import load_bundled_ecg

FS_HZ = 1000.0


@pytest.fixture(scope="session")
def adc() -> AdcConfig:
    return AdcConfig()


@pytest.fixture(scope="session")
def dps_cfg() -> DpsConfig:
    """Chip defaults with a 10 mV window."""
    return DpsConfig.from_millivolts(10)


@pytest.fixture(scope="session")
def ecg():
    return load_bundled_ecg()


@pytest.fixture(scope="session")
def sine10():
    return gen_sine(10, 0.3, 0.9, FS_HZ, 2.0)


@pytest.fixture(scope="session")
def sine2():
    return gen_sine(2, 0.3, 0.9, FS_HZ, 2.0)


@pytest.fixture(scope="session")
def dc():
    """1000 samples at mid-scale."""
    return gen_sine(1, 0.0, 0.9, FS_HZ, 1.0)


@pytest.fixture(scope="session")
def lpf_square():
    """5 Hz square, 1 Vpp around 0.9 V, through a 20 Hz single-pole low-pass."""
    return gen_lpf_square(5, 1.0, 0.9, 20, FS_HZ, 1.0)


@pytest.fixture
def fixture_signals(ecg, sine10, sine2, dc, lpf_square):
    return {"ecg": ecg, "sine10": sine10, "sine2": sine2, "dc": dc, "lpf_square": lpf_square}
