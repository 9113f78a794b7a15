#!/usr/bin/env python3
"""
Customer-Garment Association Engine

Tracks which customers associate with which garments of interest in an
annotated in-store video stream, and builds the store reports from the
resulting interval log.

Usage:
  python3 main.py track stream.jsonl --out data/run1
  python3 main.py analyze data/run1/intervals.csv stream.jsonl --out data/run1
  python3 main.py synth scenario.json --out data/synth
  python3 main.py validate stream.jsonl

Exit codes: 0 success, 1 validation or config error, 2 I/O error.
"""

import argparse
import logging
import os
import sys
from typing import Callable, List, Optional

from tqdm import tqdm

from src import config as settings
from src.analytics import ReportWriter, build_report
from src.config import load_engine_config
from src.manifest import RunManifest
from src.model import AnnotationError, ClusteringError, ConfigError, EmptyPopulationError, read_stream, validate_stream
from src.synth import ScenarioConfig, generate, scenario_to_dict, write_scenario
from src.tracking import AssociationTracker, IntervalCSVWriter, read_intervals

INTERVALS_FILE = 'intervals.csv'

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2

logger = logging.getLogger(__name__)


def _engine_config(args: argparse.Namespace):
    return load_engine_config(getattr(args, 'config', None), {
        'frame_duration': getattr(args, 'frame_duration', None),
        'mindist': getattr(args, 'mindist', None),
        'garment_weight': getattr(args, 'garment_weight', None),
        'customer_weight': getattr(args, 'customer_weight', None),
    })


def _run(command: Callable[[argparse.Namespace], int], args: argparse.Namespace) -> int:
    """Map library errors to exit codes."""
    try:
        return command(args)
    except (AnnotationError, ConfigError, ClusteringError, EmptyPopulationError) as e:
        print(f"❌ {e}")
        return EXIT_INVALID
    except OSError as e:
        print(f"❌ I/O error: {e}")
        return EXIT_IO


def _track(args: argparse.Namespace) -> int:
    engine_config = _engine_config(args)
    manifest = RunManifest(command='track', config=engine_config.to_dict())
    manifest.add_input(args.input)

    frames = read_stream(args.input)
    print(f"📊 Loaded {len(frames)} frames from {args.input}")

    tracker = AssociationTracker(engine_config)
    for frame in tqdm(frames, desc="Tracking", unit="frame", disable=not sys.stderr.isatty()):
        tracker.process_frame(frame)
    intervals = tracker.finalize()

    os.makedirs(args.out, exist_ok=True)
    output_file = os.path.join(args.out, INTERVALS_FILE)
    IntervalCSVWriter(engine_config.frame_duration).save_intervals_to_csv(intervals, output_file)
    manifest.outputs.append(INTERVALS_FILE)
    manifest.write(args.out)

    print(f"✅ {len(intervals)} intervals from {tracker.clusterings} clusterings saved to: {output_file}")
    return EXIT_OK


def _analyze(args: argparse.Namespace) -> int:
    engine_config = _engine_config(args)
    manifest = RunManifest(command='analyze', config=engine_config.to_dict())
    manifest.add_input(args.intervals)
    manifest.add_input(args.stream)

    intervals = read_intervals(args.intervals)
    frames = read_stream(args.stream)
    bundle = build_report(frames, intervals, engine_config.frame_duration)

    paths = ReportWriter(args.out).write_all(bundle)
    manifest.outputs.extend(os.path.basename(p) for p in paths)
    manifest.write(args.out)

    print(f"📁 Output directory: {args.out}")
    print(f"✅ {len(paths)} report files written")
    return EXIT_OK


def _synth(args: argparse.Namespace) -> int:
    engine_config = _engine_config(args)
    scenario = ScenarioConfig.from_json_file(args.scenario)
    manifest = RunManifest(command='synth', config={
        'engine': engine_config.to_dict(),
        'scenario': scenario_to_dict(scenario),
    })
    manifest.add_input(args.scenario)

    frames, truth = generate(scenario)
    stream_path, truth_path = write_scenario(frames, truth, scenario, args.out, engine_config.frame_duration)
    manifest.outputs.extend(os.path.basename(p) for p in (stream_path, truth_path))
    manifest.write(args.out)

    print(f"✅ {len(frames)} frames saved to: {stream_path}")
    print(f"✅ {len(truth.intervals)} planted intervals saved to: {truth_path}")
    return EXIT_OK


def _validate(args: argparse.Namespace) -> int:
    report = validate_stream(args.input)
    if report.ok:
        print(report.summary())
        return EXIT_OK

    for line_no, message in report.violations:
        print(f"line {line_no}: {message}")
    hidden = report.total_violations - len(report.violations)
    if hidden:
        print(f"... and {hidden} more")
    return EXIT_INVALID


def cmd_track(args: argparse.Namespace) -> int:
    """Run the tracker over a stream and write intervals.csv plus a manifest."""
    return _run(_track, args)


def cmd_analyze(args: argparse.Namespace) -> int:
    """Build the store reports from an interval log and its stream."""
    return _run(_analyze, args)


def cmd_synth(args: argparse.Namespace) -> int:
    """Generate a synthetic stream and its planted ground truth."""
    return _run(_synth, args)


def cmd_validate(args: argparse.Namespace) -> int:
    """Check a stream against the annotation schema, listing up to 20 violations."""
    return _run(_validate, args)


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument('--config', help='Engine config file (KEY=VALUE lines)')
    shared.add_argument('--out', default=settings.DEFAULT_OUT_DIR, help='Output directory')
    shared.add_argument('--frame-duration', type=float, help='Seconds per frame')
    shared.add_argument('--mindist', type=float, help='Re-clustering displacement threshold in pixels')
    shared.add_argument('--garment-weight', type=float, help='WKM weight of garments')
    shared.add_argument('--customer-weight', type=float, help='WKM weight of customers')

    parser = argparse.ArgumentParser(description='Customer-garment association engine')
    sub = parser.add_subparsers(dest='command', required=True)

    track = sub.add_parser('track', parents=[shared], help='Track associations in a stream')
    track.add_argument('input', help='Annotation stream (JSONL)')
    track.set_defaults(func=cmd_track)

    analyze = sub.add_parser('analyze', parents=[shared], help='Build store reports')
    analyze.add_argument('intervals', help='Interval log CSV')
    analyze.add_argument('stream', help='Annotation stream (JSONL)')
    analyze.set_defaults(func=cmd_analyze)

    synth = sub.add_parser('synth', parents=[shared], help='Generate a synthetic scenario')
    synth.add_argument('scenario', help='Scenario config (JSON)')
    synth.set_defaults(func=cmd_synth)

    validate = sub.add_parser('validate', parents=[shared], help='Validate a stream')
    validate.add_argument('input', help='Annotation stream (JSONL)')
    validate.set_defaults(func=cmd_validate)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(
        level=getattr(logging, settings.LOG_LEVEL, logging.WARNING),
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
    )
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
