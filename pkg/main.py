#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
NightFusion Servo - Main Entry Point

Thermal-guided low-light fusion, PID pan servoing and tracking metrics.

Usage:
    python main.py fuse --rgb-dir RGB --thermal-dir THERMAL --out-dir OUT [--config CFG]
    python main.py simulate --trace-out trace.csv [--config CFG]
    python main.py metrics trace.csv [more.csv ...] [--hfov 60 --width 640] [--series-out DIR]
    python main.py query-temp frame.pgm X Y
    python main.py query-temp frame.pgm --hotspot
    python main.py replay --detections det.csv --trace-out trace.csv [--rgb-dir RGB --thermal-dir THERMAL]

Exit codes: 0 success, 1 usage or configuration error, 2 data error.
Temperatures assume centikelvin counts (T = count / 100 - 273.15).
"""

import sys
import argparse
import logging
from pathlib import Path
from typing import List, Optional

from config.settings import get_settings
from src.data.config_loader import load_app_config
from src.data.models import AppConfig, CameraGeometry
from src.imaging.netpbm import read_thermal
from src.processing.batch_processor import BatchProcessor
from src.processing.radiometry import hotspot, query_pixel
from src.tracking.metrics import summarize
from src.tracking.replay import replay_detections
from src.tracking.report import export_series, render_report
from src.tracking.simulator import run_closed_loop
from src.tracking.trace_io import read_detections, read_trace, write_trace
from src.utils.errors import ConfigError, FramePairingError, ImageFormatError, TraceFormatError
from src.utils.logging_config import setup_logging as configure_logging

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

logger = logging.getLogger(__name__)


class NightFusionArgumentParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def positive_float(text: str) -> float:
    """argparse type for a strictly positive number."""
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return value


def _fail(code: int, message: str) -> int:
    logger.error(message)
    print(f"error: {message}", file=sys.stderr)
    return code


def _load_config(config_path: Optional[str]) -> AppConfig:
    """Explicit --config, else DEFAULT_CONFIG_PATH when present, else built-in defaults."""
    if config_path is None:
        default_path = Path(get_settings().DEFAULT_CONFIG_PATH)
        if default_path.is_file():
            config_path = str(default_path)
    return load_app_config(config_path)


def cmd_fuse(args: argparse.Namespace) -> int:
    """Fuse every frame pair of two directories."""
    try:
        config = _load_config(args.config)
    except ConfigError as e:
        return _fail(EXIT_USAGE, str(e))

    try:
        processor = BatchProcessor(config.fusion, show_progress=args.progress)
        stats = processor.process_directories(args.rgb_dir, args.thermal_dir, args.out_dir)
    except (FramePairingError, ImageFormatError) as e:
        return _fail(EXIT_DATA, str(e))
    except OSError as e:
        return _fail(EXIT_DATA, f"{e.filename or args.out_dir}: {e.strerror or e}")

    print(f"Fused {stats['processed_successfully']} frame pairs into {args.out_dir}")
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    """Run the closed-loop simulator and write the trace CSV."""
    try:
        config = _load_config(args.config)
    except ConfigError as e:
        return _fail(EXIT_USAGE, str(e))

    try:
        trace = run_closed_loop(config.sim, config.gains, config.motion, config.detector, config.servo)
    except ValueError as e:
        return _fail(EXIT_USAGE, str(e))
    try:
        count = write_trace(args.trace_out, trace)
    except OSError as e:
        return _fail(EXIT_DATA, f"{args.trace_out}: {e.strerror or e}")

    print(f"Wrote {count} records to {args.trace_out}")
    return EXIT_OK


def cmd_metrics(args: argparse.Namespace) -> int:
    """Print the tracking report for one or more traces."""
    try:
        config = _load_config(args.config)
    except ConfigError as e:
        return _fail(EXIT_USAGE, str(e))

    try:
        geometry = CameraGeometry(
            hfov_deg=args.hfov if args.hfov is not None else config.geometry.hfov_deg,
            width_px=args.width if args.width is not None else config.geometry.width_px,
        )
    except ValueError as e:
        return _fail(EXIT_USAGE, f"invalid geometry: {e}")

    named_stats = []
    for trace_path in args.traces:
        try:
            trace = read_trace(trace_path)
        except TraceFormatError as e:
            return _fail(EXIT_USAGE, f"{trace_path}: {e}")

        name = Path(trace_path).stem
        named_stats.append((name, summarize(trace, geometry)))
        if args.series_out:
            try:
                export_series(args.series_out, name, trace, geometry, args.bin_px)
            except OSError as e:
                return _fail(EXIT_DATA, f"{e.filename or args.series_out}: {e.strerror or e}")

    sys.stdout.write(render_report(named_stats))
    return EXIT_OK


def cmd_query_temp(args: argparse.Namespace) -> int:
    """Print the temperature at one pixel, or at the hottest pixel."""
    try:
        frame = read_thermal(args.thermal_path)
    except ImageFormatError as e:
        return _fail(EXIT_USAGE, str(e))

    if args.hotspot:
        x, y, celsius = hotspot(frame)
    else:
        if args.x is None or args.y is None:
            return _fail(EXIT_USAGE, "give X and Y, or --hotspot")
        x, y = args.x, args.y
        try:
            celsius = query_pixel(frame, x, y)
        except ValueError as e:
            return _fail(EXIT_USAGE, str(e))

    print(f"T({x},{y}) = {celsius:.2f} C")
    return EXIT_OK


def cmd_replay(args: argparse.Namespace) -> int:
    """Run the servo over recorded detections and write the trace CSV."""
    if (args.rgb_dir is None) != (args.thermal_dir is None):
        return _fail(EXIT_USAGE, "--rgb-dir and --thermal-dir go together")

    try:
        config = _load_config(args.config)
    except ConfigError as e:
        return _fail(EXIT_USAGE, str(e))

    try:
        detections = read_detections(args.detections)
    except TraceFormatError as e:
        return _fail(EXIT_USAGE, f"{args.detections}: {e}")

    try:
        frame_pairs = None
        if args.rgb_dir is not None:
            frame_pairs = BatchProcessor(config.fusion).pair_frames(args.rgb_dir, args.thermal_dir)
        trace = replay_detections(
            detections, config.gains, config.servo, config.geometry,
            frame_pairs=frame_pairs, fusion_config=config.fusion,
        )
        count = write_trace(args.trace_out, trace)
    except (FramePairingError, ImageFormatError) as e:
        return _fail(EXIT_DATA, str(e))
    except OSError as e:
        return _fail(EXIT_DATA, f"{e.filename or args.trace_out}: {e.strerror or e}")

    print(f"Wrote {count} records to {args.trace_out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    """Command-line parser with one subcommand per operation."""
    parser = NightFusionArgumentParser(
        prog="nightfusion",
        description="NightFusion Servo - thermal-guided fusion, PID pan tracking and metrics"
    )
    parser.add_argument(
        "--log-level",
        type=str,
        default=None,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Set logging level (overrides LOG_LEVEL)"
    )
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    fuse = subparsers.add_parser("fuse", help="Fuse RGB/thermal frame directories")
    fuse.add_argument("--rgb-dir", required=True, help="Directory of P6 visible frames (*.ppm)")
    fuse.add_argument("--thermal-dir", required=True, help="Directory of 16-bit P5 thermal frames (*.pgm)")
    fuse.add_argument("--out-dir", required=True, help="Output directory")
    fuse.add_argument("--config", default=None, help="Experiment config (JSON)")
    fuse.add_argument("--progress", action="store_true", help="Show a progress bar")
    fuse.set_defaults(handler=cmd_fuse)

    simulate = subparsers.add_parser("simulate", help="Run the closed-loop tracking simulator")
    simulate.add_argument("--config", default=None, help="Experiment config (JSON)")
    simulate.add_argument("--trace-out", required=True, help="Trace CSV to write")
    simulate.set_defaults(handler=cmd_simulate)

    metrics = subparsers.add_parser("metrics", help="Report tracking statistics for trace CSVs")
    metrics.add_argument("traces", nargs="+", help="Trace CSV files, one report column each")
    metrics.add_argument("--hfov", type=float, default=None, help="Horizontal field of view in degrees")
    metrics.add_argument("--width", type=int, default=None, help="Image width in pixels")
    metrics.add_argument("--config", default=None, help="Experiment config supplying the geometry")
    metrics.add_argument("--series-out", default=None, help="Directory for derived series CSVs")
    metrics.add_argument("--bin-px", type=positive_float, default=5.0, help="Histogram bin width in pixels")
    metrics.set_defaults(handler=cmd_metrics)

    query = subparsers.add_parser("query-temp", help="Temperature at a pixel of a thermal frame")
    query.add_argument("thermal_path", help="16-bit P5 thermal frame")
    query.add_argument("x", type=int, nargs="?", help="Column")
    query.add_argument("y", type=int, nargs="?", help="Row")
    query.add_argument("--hotspot", action="store_true", help="Report the hottest pixel instead")
    query.set_defaults(handler=cmd_query_temp)

    replay = subparsers.add_parser("replay", help="Drive the servo with recorded detections")
    replay.add_argument("--detections", required=True, help="Detections CSV (frame,t_ms,x_px[,latency_ms])")
    replay.add_argument("--trace-out", required=True, help="Trace CSV to write")
    replay.add_argument("--config", default=None, help="Experiment config (JSON)")
    replay.add_argument("--rgb-dir", default=None, help="Visible frames to fuse per detection row")
    replay.add_argument("--thermal-dir", default=None, help="Thermal frames to fuse per detection row")
    replay.set_defaults(handler=cmd_replay)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main application entry point; returns the process exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    # Load settings first
    try:
        settings = get_settings()
    except ValueError as e:
        print(f"Failed to load settings: {e}", file=sys.stderr)
        return EXIT_USAGE

    configure_logging(settings, level=args.log_level)
    logger.debug(f"Environment: {settings.ENVIRONMENT}, command: {args.command}")

    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
