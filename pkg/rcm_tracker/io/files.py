# coding: utf-8
# Copyright (c) rcm_tracker developers
# Distributed under the terms of "New BSD License", see the LICENSE file.

"""
CSV streams and frame files.

Raw encoder streams have the columns t, c1, c2, ct, c3; joint streams t, phi1, phi2, phi3, d
(degrees, mm); marker streams t, cx, cy, cz, px, py, pz (center of motion and tip, mm).
Files may start with `# key: value` comment lines recording how they were produced.
"""

import os

import numpy as np
import pandas

from rcm_tracker.acquisition.encoder import CHANNELS, EncoderFrame, decode_stream
from rcm_tracker.kinematics.model import JointSeries
from rcm_tracker.reference.alignment import REFERENCE_RATE, FrameTriad, MarkerStream
from rcm_tracker.utils.config import read_config_file
from rcm_tracker.utils.errors import OutputError, ParseError, RcmTrackerError
from rcm_tracker.utils.formatting import digits_for, format_fixed

__author__ = "rcm_tracker developers"
__copyright__ = "Copyright 2026, rcm_tracker developers"
__version__ = "0.1"
__maintainer__ = "rcm_tracker developers"
__status__ = "development"
__date__ = "Oct 18, 2026"

RAW_COLUMNS = ("t",) + CHANNELS
JOINT_COLUMNS = ("t", "phi1", "phi2", "phi3", "d")
MARKER_COLUMNS = ("t", "cx", "cy", "cz", "px", "py", "pz")
RAW = "raw"
JOINTS = "joints"


def read_header(file_name):
    """The leading `# key: value` comment lines as a dict of strings."""
    header = {}
    try:
        with open(file_name) as f:
            for line in f:
                if not line.startswith("#"):
                    break
                key, sep, value = line[1:].partition(":")
                if sep:
                    header[key.strip()] = value.strip()
    except OSError as e:
        raise ParseError(f"Cannot read '{file_name}': {e}") from e
    return header


def _read_frame(file_name, required):
    if not os.path.isfile(file_name):
        raise ParseError(f"Input file '{file_name}' does not exist")
    try:
        frame = pandas.read_csv(file_name, comment="#", skipinitialspace=True)
    except (pandas.errors.ParserError, pandas.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise ParseError(f"Cannot parse '{file_name}': {e}") from e
    frame.columns = [str(c).strip() for c in frame.columns]
    missing = [c for c in required if c not in frame.columns]
    if len(missing) > 0:
        raise ParseError(f"'{file_name}' is not a valid stream", missing_columns=missing)
    return frame


def _numeric(frame, columns, file_name):
    try:
        return {c: pandas.to_numeric(frame[c]).to_numpy(dtype=float) for c in columns}
    except (ValueError, TypeError) as e:
        raise ParseError(f"Non-numeric values in '{file_name}': {e}") from e


def stream_kind(file_name):
    """"raw" or "joints", decided from the column header."""
    frame = _read_frame(file_name, ())
    if all(c in frame.columns for c in RAW_COLUMNS):
        return RAW
    if all(c in frame.columns for c in JOINT_COLUMNS):
        return JOINTS
    raise ParseError(
        f"'{file_name}' is neither a raw nor a joint stream",
        missing_columns=[c for c in JOINT_COLUMNS if c not in frame.columns],
    )


def read_raw_stream(file_name):
    """
    Returns:
        tuple: list of EncoderFrame and the header dict.
    """
    frame = _read_frame(file_name, RAW_COLUMNS)
    values = _numeric(frame, RAW_COLUMNS, file_name)
    counts = {c: values[c] for c in CHANNELS}
    for channel, column in counts.items():
        if not np.all(np.isfinite(column)) or not np.all(column == np.round(column)):
            raise ParseError(f"Channel '{channel}' in '{file_name}' holds non-integer counts")
    try:
        frames = [
            EncoderFrame(c1=int(c1), c2=int(c2), ct=int(ct), c3=int(c3), t=float(t))
            for t, c1, c2, ct, c3 in zip(values["t"], counts["c1"], counts["c2"], counts["ct"], counts["c3"])
        ]
    except RcmTrackerError as e:
        raise ParseError(f"Invalid frame in '{file_name}': {e}") from e
    return frames, read_header(file_name)


def read_joint_stream(file_name):
    frame = _read_frame(file_name, JOINT_COLUMNS)
    values = _numeric(frame, JOINT_COLUMNS, file_name)
    try:
        return JointSeries(**values)
    except RcmTrackerError as e:
        raise ParseError(f"Invalid joint stream '{file_name}': {e}") from e


def header_start_depth(header, file_name=""):
    """The `start_depth` header entry in mm, None when absent."""
    if "start_depth" not in header:
        return None
    try:
        return float(header["start_depth"])
    except ValueError as e:
        raise ParseError(f"Invalid start_depth header in '{file_name}'") from e


def read_device_stream(file_name, calibration, start_depth=None):
    """
    Joint states from a raw or an already decoded device stream.

    For raw streams without `start_depth`, a `start_depth` header entry is used when present.

    Returns:
        tuple: JointSeries and the header dict.
    """
    if stream_kind(file_name) == JOINTS:
        return read_joint_stream(file_name), read_header(file_name)
    frames, header = read_raw_stream(file_name)
    if start_depth is None:
        start_depth = header_start_depth(header, file_name)
    return decode_stream(frames, calibration, start_depth=start_depth), header


def read_marker_stream(file_name, rate=REFERENCE_RATE):
    frame = _read_frame(file_name, MARKER_COLUMNS)
    values = _numeric(frame, MARKER_COLUMNS, file_name)
    try:
        return MarkerStream(
            t=values["t"],
            center=np.column_stack([values["cx"], values["cy"], values["cz"]]),
            tip=np.column_stack([values["px"], values["py"], values["pz"]]),
            rate=rate,
        )
    except RcmTrackerError as e:
        raise ParseError(f"Invalid marker stream '{file_name}': {e}") from e


def read_triad(file_name):
    """FrameTriad from a JSON/YAML file with the keys `axes` (3x3, rows i, j, k) and `origin`."""
    data = read_config_file(file_name).to_builtin()
    missing = [key for key in ("axes", "origin") if key not in data]
    if len(missing) > 0:
        raise ParseError(f"'{file_name}' is not a frame triad", missing_columns=missing)
    return FrameTriad(np.array(data["axes"], dtype=float), np.array(data["origin"], dtype=float))


def check_output_dir(directory):
    if not os.path.isdir(directory):
        raise OutputError(f"Output directory '{directory}' does not exist")
    if not os.access(directory, os.W_OK):
        raise OutputError(f"Output directory '{directory}' is not writable")
    return directory


def write_text(file_name, text):
    check_output_dir(os.path.dirname(os.path.abspath(file_name)))
    try:
        with open(file_name, "w", newline="\n") as f:
            f.write(text)
    except OSError as e:
        raise OutputError(f"Cannot write '{file_name}': {e}") from e
    return file_name


def _format_column(name, column):
    if column.dtype.kind == "f":
        return [format_fixed(v, digits_for(name)) for v in column]
    return column


def frame_to_csv_text(frame, header=None):
    """CSV text with fixed precision per column and optional `# key: value` lines on top."""
    formatted = pandas.DataFrame({name: _format_column(name, frame[name]) for name in frame.columns})
    lines = [f"# {key}: {value}\n" for key, value in (header or {}).items()]
    return "".join(lines) + formatted.to_csv(index=False, lineterminator="\n")


def write_frame(frame, file_name, header=None):
    return write_text(file_name, frame_to_csv_text(frame, header))


def write_raw_stream(frames, file_name, header=None):
    frame = pandas.DataFrame(
        {
            "t": np.array([f.t for f in frames], dtype=float),
            **{c: np.array([getattr(f, c) for f in frames], dtype=np.int64) for c in CHANNELS},
        },
        columns=list(RAW_COLUMNS),
    )
    return write_frame(frame, file_name, header)


def write_joint_stream(joints: JointSeries, file_name, header=None):
    return write_frame(joints.to_frame(), file_name, header)


def write_marker_stream(markers: MarkerStream, file_name, header=None):
    frame = pandas.DataFrame(
        np.column_stack([markers.t, markers.center, markers.tip]), columns=list(MARKER_COLUMNS)
    )
    return write_frame(frame, file_name, header)


def write_metric_table(frame, file_name):
    """Flat report table; each value is written with the precision of its metric."""
    frame = frame.copy()
    frame["value"] = [format_fixed(v, digits_for(m)) for m, v in zip(frame["metric"], frame["value"])]
    return write_frame(frame, file_name)
