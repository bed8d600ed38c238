"""Signal types, generators and trace loaders.

The event file codec lives in signals.event_io and is imported by path.
"""

from .models import UniformSignal, EventRecord, EventStream, signal_from_array
from .generators import gen_sine, gen_square, gen_lpf_square, gen_ramp, gen_code_ramp, gen_step
from .loaders import load_signal_csv, write_signal_csv, load_bundled_ecg
