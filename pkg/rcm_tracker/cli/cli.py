# coding: utf-8
# Copyright (c) rcm_tracker developers
# Distributed under the terms of "New BSD License", see the LICENSE file.

"""
rcm-tracker - simulate, decode, validate and evaluate tracking-device recordings.

Exit codes: 0 success, 1 other error, 2 parse error, 3 alignment error, 4 metric failure,
5 output error.
"""

import argparse
import dataclasses
import json
import logging
import os
import sys

import numpy as np
import pandas
from pyiron_base import state

from rcm_tracker.acquisition.encoder import Calibration, decode_stream, static_zero
from rcm_tracker.evaluation.report import frame_from_document, session_report, side_by_side
from rcm_tracker.evaluation.workspace import MIN_BOUNDARY_SAMPLES, workspace_boundary
from rcm_tracker.io.files import (
    check_output_dir,
    header_start_depth,
    read_device_stream,
    read_marker_stream,
    read_raw_stream,
    read_triad,
    write_frame,
    write_joint_stream,
    write_metric_table,
    write_raw_stream,
    write_text,
)
from rcm_tracker.kinematics.model import LITERAL, RECONCILED, reconstruct_trajectory
from rcm_tracker.kinematics.transform import Transform
from rcm_tracker.metrics.metrics import JERK_MODES, MetricConfig, compute_metric_set, workspace_cone
from rcm_tracker.reference.alignment import (
    CHANNEL_UNITS,
    DEFAULT_GRID_RATE,
    aligned_frame,
    channel_mse,
    derive_reference_joints,
    estimate_frame_transform,
    mse_summary,
    resample_align,
    rmse,
)
from rcm_tracker.simulator.profiles import (
    HANDS,
    PROFILES,
    NoiseParams,
    ScanParams,
    corrupt_and_encode,
    generate_cone_scan,
    generate_peg_transfer_profile,
)
from rcm_tracker.utils.errors import MetricComputationError, ParseError, RcmTrackerError
from rcm_tracker.utils.formatting import format_fixed

__author__ = "rcm_tracker developers"
__copyright__ = "Copyright 2026, rcm_tracker developers"
__version__ = "0.1"
__maintainer__ = "rcm_tracker developers"
__status__ = "development"
__date__ = "Oct 18, 2026"

DEFAULT_DURATIONS = {"cone-scan": 60.0, "peg-transfer": 164.0}
# command-line names of the inverse kinematics conventions; "paper" is the literal one
CONVENTION_NAMES = {RECONCILED: RECONCILED, "paper": LITERAL, LITERAL: LITERAL}


def _calibration(args):
    if getattr(args, "calibration", None):
        return Calibration.from_file(args.calibration)
    return Calibration()


def _metric_config(args):
    cfg = MetricConfig.from_file(args.metric_config) if args.metric_config else MetricConfig()
    if args.jerk_mode is not None:
        cfg = dataclasses.replace(cfg, jerk_mode=args.jerk_mode)
    return cfg


def _stem(file_name):
    return os.path.splitext(os.path.basename(file_name))[0]


def cmd_simulate(args):
    check_output_dir(args.out)
    calibration = _calibration(args)
    duration = args.duration if args.duration is not None else DEFAULT_DURATIONS[args.profile]
    if args.profile == "cone-scan":
        if args.scan_config:
            params = ScanParams.from_file(args.scan_config)
        else:
            params = ScanParams.for_hand(
                args.hand, duration=duration, rate=args.rate, cone_half_angle=calibration.cone_half_angle
            )
        joints = generate_cone_scan(params)
    else:
        joints = generate_peg_transfer_profile(
            duration=duration,
            rate=args.rate,
            hand=args.hand,
            seed=args.seed,
            cone_half_angle=calibration.cone_half_angle,
        )
    noise = NoiseParams(
        angle_noise_sd=args.angle_noise, translation_noise_sd=args.translation_noise, seed=args.seed
    )
    stream = corrupt_and_encode(joints, calibration, noise)
    header = {
        "profile": args.profile,
        "hand": args.hand,
        "seed": args.seed,
        "duration": duration,
        "rate": args.rate,
        "angle_noise_sd": noise.angle_noise_sd,
        "translation_noise_sd": noise.translation_noise_sd,
        "start_depth": repr(stream.start_depth),
        "samples": len(joints),
        "saturated": len(stream.saturated),
    }
    prefix = os.path.join(args.out, f"{args.profile}_{args.hand}")
    write_raw_stream(stream.frames, f"{prefix}_raw.csv", header)
    write_joint_stream(joints, f"{prefix}_truth.csv", header)
    print(f"samples: {len(joints)}")
    print(f"max cone angle: {format_fixed(np.max(joints.cone_angle), 4)} deg")
    print(f"seed: {args.seed}")
    if len(stream.saturated) > 0:
        print(f"saturated samples: {len(stream.saturated)}")
    return 0


def cmd_decode(args):
    check_output_dir(args.out)
    calibration = _calibration(args)
    frames, header = read_raw_stream(args.raw)
    if args.zero_frames is not None:
        offsets = static_zero(frames[: args.zero_frames])
        # the gimbal rests at its mechanical zero while the tool may be inserted: keep the roller zero
        calibration = calibration.with_offsets(offsets._replace(ct=calibration.zero_offsets.ct))
        state.logger.info(f"Static zero offsets {tuple(calibration.zero_offsets)}")
    joints = decode_stream(frames, calibration, start_depth=header_start_depth(header, args.raw))
    out = os.path.join(args.out, f"{_stem(args.raw)}_joints.csv")
    write_joint_stream(joints, out)
    print(f"decoded {len(joints)} frames to {out}")
    return 0


def _reference_joints(args, reference_file, convention):
    markers = read_marker_stream(reference_file)
    if (args.device_triad is None) != (args.reference_triad is None):
        raise ParseError("--device-triad and --reference-triad must be given together")
    if args.device_triad is None:
        transform = Transform.identity()
    else:
        transform = estimate_frame_transform(read_triad(args.device_triad), read_triad(args.reference_triad))
    return derive_reference_joints(markers, transform, convention=convention)


def _mse_block(pairs):
    return {
        channel: {
            "mse": channel_mse(pair),
            "rmse": rmse(pair),
            "unit": CHANNEL_UNITS[channel],
            "samples": len(pair),
            "lag": pair.lag,
        }
        for channel, pair in pairs.items()
    }


def _mse_frame(block):
    return pandas.DataFrame(
        [{"channel": channel, **values} for channel, values in block.items()],
        columns=["channel", "mse", "rmse", "unit", "samples", "lag"],
    )


def _validate(args, device, reference_file, convention):
    reference = _reference_joints(args, reference_file, convention)
    notes = []
    if len(reference.dropped) > 0:
        notes.append(f"dropped {len(reference.dropped)} degenerate reference samples")
    pairs = resample_align(device, reference.joints, grid_rate=args.grid_rate, lag_search=not args.no_lag_search)
    return pairs, _mse_block(pairs), notes


def _summary_frame(frame):
    rows = [
        {"channel": channel, **mse_summary(group["mse"])}
        for channel, group in frame.groupby("channel", sort=False)
    ]
    return pandas.DataFrame(rows, columns=["channel", "count", "min", "q1", "median", "q3", "max", "mean"])


def cmd_validate(args):
    """One test per device/reference pair; several tests add the per-channel MSE distribution."""
    check_output_dir(args.out)
    if len(args.device) != len(args.reference):
        raise ParseError(f"validate got {len(args.device)} device streams but {len(args.reference)} reference streams")
    tests = [_stem(file_name) for file_name in args.device]
    if len(set(tests)) != len(tests):
        raise ParseError("device stream file names must be distinct")
    calibration = _calibration(args)
    convention = CONVENTION_NAMES[args.convention]
    frames = []
    for test, device_file, reference_file in zip(tests, args.device, args.reference):
        device, _ = read_device_stream(device_file, calibration)
        pairs, block, notes = _validate(args, device, reference_file, convention)
        frames.append(_mse_frame(block).assign(test=test))
        aligned = "aligned.csv" if len(tests) == 1 else f"{test}_aligned.csv"
        write_frame(aligned_frame(pairs), os.path.join(args.out, aligned))
        for note in notes:
            print(f"{test}: {note}")
    frame = pandas.concat(frames, ignore_index=True)
    frame = frame[["test"] + [column for column in frame.columns if column != "test"]]
    write_frame(frame, os.path.join(args.out, "mse.csv"))
    print(frame.to_string(index=False))
    if len(tests) > 1:
        summary = _summary_frame(frame)
        write_frame(summary, os.path.join(args.out, "mse_summary.csv"))
        print(summary.to_string(index=False))
    return 0


def cmd_evaluate(args):
    check_output_dir(args.out)
    if args.left is None and args.right is None:
        raise ParseError("evaluate needs --left and/or --right")
    calibration = _calibration(args)
    cfg = _metric_config(args)
    metrics, cones, boundaries, devices, notes = {}, {}, {}, {}, []
    for hand in HANDS:
        file_name = getattr(args, hand)
        if file_name is None:
            continue
        devices[hand], _ = read_device_stream(file_name, calibration)
        trajectory = reconstruct_trajectory(devices[hand])
        metrics[hand] = compute_metric_set(trajectory, cfg, strict=False)
        try:
            cones[hand] = workspace_cone(trajectory, cfg)
        except RcmTrackerError as e:
            notes.append(f"{hand}: no workspace cone: {e}")
        if len(devices[hand]) >= MIN_BOUNDARY_SAMPLES:
            boundary = workspace_boundary(devices[hand], cone_half_angle=calibration.cone_half_angle)
            boundaries[hand] = boundary.summary()
            if boundary.violation:
                notes.append(
                    f"{hand}: cone angle {boundary.max_cone_angle:.4f} deg exceeds the "
                    f"{boundary.cone_half_angle} deg half-angle"
                )
    mse = None
    if args.reference is not None:
        hand = args.reference_hand or ("right" if "right" in devices else "left")
        if hand not in devices:
            raise ParseError(f"--reference-hand {hand} has no device stream")
        _, mse, validation_notes = _validate(args, devices[hand], args.reference, CONVENTION_NAMES[args.convention])
        notes.extend(f"{hand}: {note}" for note in validation_notes)
    report = session_report(
        left=metrics.get("left"),
        right=metrics.get("right"),
        mse=mse,
        metric_config=cfg,
        calibration=calibration,
        notes=notes,
        cones=cones,
        boundaries=boundaries,
    )
    write_text(os.path.join(args.out, "report.json"), report.to_json())
    write_metric_table(report.to_frame(), os.path.join(args.out, "metrics.csv"))
    for note in report.notes:
        print(note)
    if report.has_failures:
        print("error: some metrics could not be computed, the report is partial", file=sys.stderr)
        return MetricComputationError.exit_code
    return 0


def cmd_report(args):
    try:
        with open(args.report) as f:
            document = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ParseError(f"Cannot read report '{args.report}': {e}") from e
    if not isinstance(document, dict):
        raise ParseError(f"Report '{args.report}' is not a JSON object")
    print(side_by_side(document).to_string())
    out = args.out if args.out is not None else os.path.dirname(os.path.abspath(args.report))
    write_metric_table(frame_from_document(document), os.path.join(check_output_dir(out), "metrics.csv"))
    return 0


def _add_calibration(parser):
    parser.add_argument("--calibration", help="calibration file (JSON or YAML)")


def _add_validation(parser):
    parser.add_argument("--device-triad", help="device base frame triad file")
    parser.add_argument("--reference-triad", help="reference frame triad file")
    parser.add_argument("--grid-rate", type=float, default=DEFAULT_GRID_RATE, help="resampling rate in Hz")
    parser.add_argument("--no-lag-search", action="store_true", help="do not correct the reference clock")
    parser.add_argument("--convention", choices=tuple(CONVENTION_NAMES), default=RECONCILED)


def build_parser():
    parser = argparse.ArgumentParser(prog="rcm-tracker", description=__doc__.strip().splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log debug messages")
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser("simulate", help="write a synthetic raw stream and its ground truth")
    simulate.add_argument("--profile", choices=PROFILES, required=True)
    simulate.add_argument("--duration", type=float, help="seconds; 60 for cone-scan, 164 for peg-transfer")
    simulate.add_argument("--rate", type=float, default=100.0, help="sample rate in Hz")
    simulate.add_argument("--hand", choices=HANDS, default="left")
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--angle-noise", type=float, default=0.0, help="angle noise sd in degrees")
    simulate.add_argument("--translation-noise", type=float, default=0.0, help="translation noise sd in mm")
    simulate.add_argument("--scan-config", help="ScanParams file for the cone-scan profile")
    _add_calibration(simulate)
    simulate.add_argument("--out", required=True)
    simulate.set_defaults(func=cmd_simulate)

    decode = commands.add_parser("decode", help="decode a raw stream to joint states")
    decode.add_argument("raw")
    _add_calibration(decode)
    decode.add_argument("--zero-frames", type=int, help="estimate angle zero offsets from the first N frames")
    decode.add_argument("--out", required=True)
    decode.set_defaults(func=cmd_decode)

    validate = commands.add_parser("validate", help="compare device streams with reference markers")
    validate.add_argument("device", nargs="+", help="one device stream per test")
    validate.add_argument("--reference", nargs="+", required=True, help="marker streams in device order")
    _add_validation(validate)
    _add_calibration(validate)
    validate.add_argument("--out", required=True)
    validate.set_defaults(func=cmd_validate)

    evaluate = commands.add_parser("evaluate", help="compute the session report")
    evaluate.add_argument("--left")
    evaluate.add_argument("--right")
    evaluate.add_argument("--reference", help="reference marker stream of one hand")
    evaluate.add_argument("--reference-hand", choices=HANDS)
    evaluate.add_argument("--metric-config")
    evaluate.add_argument("--jerk-mode", choices=JERK_MODES)
    _add_validation(evaluate)
    _add_calibration(evaluate)
    evaluate.add_argument("--out", required=True)
    evaluate.set_defaults(func=cmd_evaluate)

    report = commands.add_parser("report", help="render an existing report.json")
    report.add_argument("report")
    report.add_argument("--out")
    report.set_defaults(func=cmd_report)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.verbose:
        state.logger.setLevel(logging.DEBUG)
    try:
        return args.func(args)
    except RcmTrackerError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
