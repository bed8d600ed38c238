#!/usr/bin/env python3
"""
DPS ADC Simulator CLI

Encodes sampled traces with the dynamic predictive sampler, rebuilds them
from event files, and compares the result against level-crossing and
Nyquist-rate SAR conversion.

JSON reports and CSV tables go to stdout (or --out); log messages go to stderr.
"""

import argparse
import json
import logging
import sys
from typing import Optional

import config
from adc.baselines import LcConfig
from adc.dps_core import DpsConfig, encode
from adc.quantizer import AdcConfig
from metrics.energy import EnergyModel, load_energy_model
from reconstruction.pwl import reconstruct_stream
from reports.experiments import compare_samplers, sweep_deltas, sweep_frame, trace_frame
from reports.run_report import build_run_report
from signals.event_io import read_events, write_events
from signals.generators import gen_code_ramp, gen_lpf_square, gen_ramp, gen_sine, gen_step
from signals.loaders import load_signal_csv, write_signal_csv
from signals.models import UniformSignal
from utils.exceptions import ConfigError, DpsSimError
from utils.helpers import parse_float_list, safe_float, safe_int

logger = logging.getLogger("dps_sim")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2

# --gen kind -> (argument usage, min arg count, max arg count)
GENERATORS = {
    "sine": ("f,vpp,offset[,dur]", 3, 4),
    "lpfsq": ("f,vpp,offset,cutoff[,dur]", 4, 5),
    "ramp": ("start_v,stop_v,n_samples", 3, 3),
    "step": ("low_v,high_v,step_index,n_samples", 4, 4),
    "coderamp": ("start_code,stop_code", 2, 2),
}


def parse_gen(text: str, fs_hz: float, adc: Optional[AdcConfig] = None) -> UniformSignal:
    """Build a stimulus from a `kind:a,b,c` argument.

    `coderamp` steps one code per sample on the grid of `adc`.

    Raises:
        ConfigError: Unknown kind or wrong argument count
    """
    kind, sep, arg_text = text.partition(":")
    kind = kind.strip().lower()
    if kind not in GENERATORS or not sep:
        raise ConfigError(f"--gen must be one of {', '.join(f'{k}:{v[0]}' for k, v in GENERATORS.items())}")

    usage, min_args, max_args = GENERATORS[kind]
    values = parse_float_list(arg_text)
    if not min_args <= len(values) <= max_args:
        raise ConfigError(f"--gen {kind} takes {usage}, got {arg_text!r}")

    if kind == "sine":
        duration = values[3] if len(values) > 3 else 1.0
        return gen_sine(values[0], values[1], values[2], fs_hz, duration)
    if kind == "lpfsq":
        duration = values[4] if len(values) > 4 else 1.0
        return gen_lpf_square(values[0], values[1], values[2], values[3], fs_hz, duration)
    if kind == "ramp":
        return gen_ramp(values[0], values[1], int(values[2]), fs_hz)
    if kind == "coderamp":
        adc = adc or AdcConfig()
        return gen_code_ramp(int(values[0]), int(values[1]), adc.lsb, adc.v_min, fs_hz)
    return gen_step(values[0], values[1], int(values[2]), int(values[3]), fs_hz)


class Settings:
    """Effective settings: explicit flag > --config file > environment > default."""

    def __init__(self, args: argparse.Namespace):
        self.file_values = config.load_config_file(args.config) if getattr(args, "config", None) else {}
        self.args = args

    def _pick(self, flag: str, key: str, default, convert):
        value = getattr(self.args, flag, None)
        if value is not None:
            return value
        if key in self.file_values:
            return convert(self.file_values[key], key)
        return default

    @property
    def bits(self) -> int:
        return self._pick("bits", "bits", config.ADC_BITS, safe_int)

    @property
    def v_min(self) -> float:
        return self._pick("vmin", "v_min", config.V_MIN, safe_float)

    @property
    def v_max(self) -> float:
        return self._pick("vmax", "v_max", config.V_MAX, safe_float)

    @property
    def timestamp_bits(self) -> int:
        return self._pick("ts_bits", "timestamp_bits", config.TIMESTAMP_BITS, safe_int)

    @property
    def fs_hz(self) -> Optional[float]:
        """Explicit rate only; None lets a trace file define its own."""
        return self._pick("fs", "fs_hz", None, safe_float)

    @property
    def delta_mv(self) -> Optional[float]:
        return self._pick("delta_mv", "delta_mv", None, safe_float)

    @property
    def lc_spacing_mv(self) -> float:
        return self._pick("lc_spacing_mv", "lc_spacing_mv", config.DEFAULT_LC_SPACING_MV, safe_float)

    def adc(self) -> AdcConfig:
        return AdcConfig(bits=self.bits, v_min=self.v_min, v_max=self.v_max)

    def dps(self, delta_mv: float) -> DpsConfig:
        return DpsConfig(adc=self.adc(), delta_volts=delta_mv / 1000.0, timestamp_bits=self.timestamp_bits)

    def energy_model(self) -> EnergyModel:
        path = getattr(self.args, "energy_model", None)
        if path:
            return load_energy_model(path)
        return EnergyModel.from_mapping(self.file_values)

    def load_signal(self) -> UniformSignal:
        fs_hz = self.fs_hz
        if self.args.gen:
            return parse_gen(self.args.gen, fs_hz or config.SAMPLE_RATE_HZ, self.adc())
        return load_signal_csv(self.args.input, fs_hz_override=fs_hz)


def _require_delta(parser: argparse.ArgumentParser, settings: Settings) -> float:
    delta_mv = settings.delta_mv
    if delta_mv is None:
        parser.error("--delta-mv is required (or delta_mv in the --config file)")
    return delta_mv


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2, default=str))


def _write_table(frame, out: Optional[str]) -> None:
    if out:
        frame.to_csv(out, index=False, lineterminator="\n")
    else:
        sys.stdout.write(frame.to_csv(index=False, lineterminator="\n"))


def cmd_simulate(args, parser) -> int:
    settings = Settings(args)
    cfg = settings.dps(_require_delta(parser, settings))
    signal = settings.load_signal()

    if args.save_input:
        write_signal_csv(signal, args.save_input)

    stream, ops = encode(signal, cfg)
    if args.out:
        write_events(args.out, stream)

    report = build_run_report(signal, stream, ops, settings.energy_model())
    _print_json(report.to_dict())
    return EXIT_OK


def cmd_reconstruct(args, parser) -> int:
    stream = read_events(args.events)
    signal = reconstruct_stream(stream)
    write_signal_csv(signal, args.out)
    logger.info("Reconstructed %d samples into %s", len(signal), args.out)
    return EXIT_OK


def cmd_evaluate(args, parser) -> int:
    settings = Settings(args)
    stream = read_events(args.events)
    signal = settings.load_signal()

    # Op counts come from re-running the sampler with the stream's own config
    _, ops = encode(signal, stream.config)
    report = build_run_report(signal, stream, ops, settings.energy_model())
    _print_json(report.to_dict())
    return EXIT_OK


def cmd_sweep(args, parser) -> int:
    settings = Settings(args)
    deltas = parse_float_list(args.delta_mv_list)
    if not deltas:
        raise ConfigError("empty delta list")
    if len(deltas) < 2:
        raise ConfigError(f"a sweep needs at least two deltas, got {deltas}")

    signal = settings.load_signal()
    # delta_volts is replaced per point
    base = settings.dps(deltas[0])
    workers = args.jobs if args.jobs is not None else config.SWEEP_WORKERS
    model = settings.energy_model() if args.energy else None
    rows = sweep_deltas(signal, base, deltas, workers=workers, model=model)
    _write_table(sweep_frame(rows), args.out)
    return EXIT_OK


def cmd_compare(args, parser) -> int:
    settings = Settings(args)
    dps_cfg = settings.dps(_require_delta(parser, settings))
    lc_cfg = LcConfig.from_millivolts(settings.lc_spacing_mv, dps_cfg.adc)
    signal = settings.load_signal()

    _print_json(compare_samplers(signal, dps_cfg, lc_cfg, settings.energy_model()))
    return EXIT_OK


def cmd_trace(args, parser) -> int:
    settings = Settings(args)
    cfg = settings.dps(_require_delta(parser, settings))
    signal = settings.load_signal()
    _write_table(trace_frame(signal, cfg), args.out)
    return EXIT_OK


COMMANDS = {
    "simulate": cmd_simulate,
    "reconstruct": cmd_reconstruct,
    "evaluate": cmd_evaluate,
    "sweep": cmd_sweep,
    "compare": cmd_compare,
    "trace": cmd_trace,
}


def _source_options(required: bool = True) -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    source = parent.add_mutually_exclusive_group(required=required)
    source.add_argument("--input", help="Signal CSV (t,v with header, or a single volts column)")
    source.add_argument(
        "--gen",
        help="Generated stimulus: sine:f,vpp,offset[,dur] | lpfsq:f,vpp,offset,cutoff[,dur] "
        "| ramp:start_v,stop_v,n | step:low_v,high_v,index,n | coderamp:start_code,stop_code",
    )
    parent.add_argument("--fs", type=float, help="Sample rate in Hz (generators, single-column files)")
    parent.add_argument("--config", help="key=value override file")
    return parent


def _energy_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--energy-model", help="key=value file of e_* energy weights (overrides --config)")
    return parent


def _converter_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--bits", type=int, help=f"ADC resolution (default {config.ADC_BITS})")
    parent.add_argument("--vmin", type=float, help=f"Lower reference in volts (default {config.V_MIN})")
    parent.add_argument("--vmax", type=float, help=f"Upper reference in volts (default {config.V_MAX})")
    parent.add_argument("--ts-bits", type=int, help=f"Timestamp width (default {config.TIMESTAMP_BITS})")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dps_sim.py",
        description="Simulate a dynamic predictive sampling ADC",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python dps_sim.py simulate --gen sine:1,0,0.9 --delta-mv 10
  python dps_sim.py simulate --input data/ecg_excerpt.csv --delta-mv 10 --out ev.csv
  python dps_sim.py reconstruct --events ev.csv --out rec.csv
  python dps_sim.py evaluate --input data/ecg_excerpt.csv --events ev.csv
  python dps_sim.py sweep --input data/ecg_excerpt.csv --delta-mv-list 2,5,10,20 --out sweep.csv
  python dps_sim.py sweep --input data/ecg_excerpt.csv --delta-mv-list 2,5,10,20 --energy
  python dps_sim.py compare --gen lpfsq:5,1,0.9,20 --delta-mv 10 --lc-spacing-mv 10
  python dps_sim.py trace --gen step:0.5,0.6,100,200 --delta-mv 10 --out trace.csv

Exit codes:
  0 - success
  1 - data or runtime error
  2 - usage or configuration error
        """,
    )
    parser.add_argument("--check-config", action="store_true", help="Print effective configuration and exit")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logs")

    sub = parser.add_subparsers(dest="command")
    source = _source_options()
    converter = _converter_options()
    energy = _energy_options()

    simulate = sub.add_parser("simulate", parents=[source, converter, energy], help="Encode a signal into an event file")
    simulate.add_argument("--delta-mv", type=float, help="Tracking window half-width in mV")
    simulate.add_argument("--out", help="Event file to write")
    simulate.add_argument("--save-input", help="Also write the input trace as t,v CSV")

    reconstruct = sub.add_parser("reconstruct", help="Rebuild a t,v trace from an event file")
    reconstruct.add_argument("--events", required=True, help="Event file")
    reconstruct.add_argument("--out", required=True, help="CSV to write")

    evaluate = sub.add_parser("evaluate", parents=[source, energy], help="Report CF, error and energy for an event file")
    evaluate.add_argument("--events", required=True, help="Event file encoded from the input")

    sweep = sub.add_parser("sweep", parents=[source, converter, energy], help="CF and RMS error over several deltas")
    sweep.add_argument("--delta-mv-list", required=True, help="Comma-separated deltas in mV, e.g. 2,5,10,20")
    sweep.add_argument("--jobs", type=int, help=f"Worker processes (default {config.SWEEP_WORKERS})")
    sweep.add_argument("--energy", action="store_true", help="Add DPS energy per block and power saving columns")
    sweep.add_argument("--out", help="CSV to write (default stdout)")

    compare = sub.add_parser("compare", parents=[source, converter, energy], help="DPS vs level crossing vs Nyquist")
    compare.add_argument("--delta-mv", type=float, help="Tracking window half-width in mV")
    compare.add_argument("--lc-spacing-mv", type=float, help="Level-crossing spacing in mV")

    trace = sub.add_parser("trace", parents=[source, converter], help="Per-sample sampler decisions as CSV")
    trace.add_argument("--delta-mv", type=float, help="Tracking window half-width in mV")
    trace.add_argument("--out", help="CSV to write (default stdout)")

    return parser


def _configure_logging(verbosity: int) -> None:
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = getattr(logging, config.LOG_LEVEL.upper(), logging.WARNING)
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[list[str]] = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)

    if args.check_config:
        summary = config.get_config_summary()
        _print_json(summary)
        return EXIT_OK if summary["config_valid"] else EXIT_USAGE

    if not args.command:
        parser.error("a command is required (unless using --check-config)")

    try:
        return COMMANDS[args.command](args, parser)
    except KeyboardInterrupt:
        print("\nCancelled by user.", file=sys.stderr)
        return 130
    except ConfigError as e:
        print(f"ERROR: {e.message}", file=sys.stderr)
        return EXIT_USAGE
    except DpsSimError as e:
        print(f"ERROR: {e.message}", file=sys.stderr)
        logger.debug("details: %s", e.details)
        return EXIT_ERROR
    except OSError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
