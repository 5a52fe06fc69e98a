# coding: utf-8
# Copyright (c) rcm_tracker developers
# Distributed under the terms of "New BSD License", see the LICENSE file.

"""
Encoder chain of the tracking device: raw counts to calibrated joint states and back.

Channels: c1, c2 (10 bit gimbal angles), ct (9 bit roller driving the translation) and
c3 (12 bit tool self-rotation).
"""

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
from pyiron_base import state

from rcm_tracker.kinematics.model import DEFAULT_CONE_HALF_ANGLE, JointSeries, JointState
from rcm_tracker.utils.config import ConfigMixin
from rcm_tracker.utils.errors import (
    DecodeError,
    InsufficientDataError,
    InvalidInputError,
    NotStaticError,
    SaturationError,
)

__author__ = "rcm_tracker developers"
__copyright__ = "Copyright 2026, rcm_tracker developers"
__version__ = "0.1"
__maintainer__ = "rcm_tracker developers"
__status__ = "development"
__date__ = "Oct 18, 2026"

CHANNEL_BITS = {"c1": 10, "c2": 10, "ct": 9, "c3": 12}
CHANNEL_COUNTS = {name: 2**bits for name, bits in CHANNEL_BITS.items()}
CHANNELS = tuple(CHANNEL_BITS)
DEFAULT_ROLLER_RADIUS = 4.482
DEFAULT_SAMPLE_RATE = 100.0
MIN_ZEROING_FRAMES = 10
MAX_ZEROING_SPREAD = 2


def step_degrees(channel):
    """Angle represented by one count of `channel`."""
    return 360.0 / CHANNEL_COUNTS[channel]


class ZeroOffsets(NamedTuple):
    c1: int = 512
    c2: int = 512
    ct: int = 0
    c3: int = 2048


@dataclass(frozen=True)
class EncoderFrame:
    """Raw counts of the four channels at time t (seconds)."""

    c1: int
    c2: int
    ct: int
    c3: int
    t: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.t) or self.t < 0:
            raise InvalidInputError(f"Frame time must be finite and >= 0, got {self.t}")

    def counts(self):
        return {name: getattr(self, name) for name in CHANNELS}

    def check_range(self):
        for name, count in self.counts().items():
            if count != int(count) or not 0 <= count < CHANNEL_COUNTS[name]:
                raise DecodeError(
                    name, f"count {count} outside 0..{CHANNEL_COUNTS[name] - 1} at t={self.t}"
                )


@dataclass(frozen=True)
class Calibration(ConfigMixin):
    """
    Encoder calibration.

    Args:
        zero_offsets (ZeroOffsets): counts at the mechanical zero.
        roller_radius (float): roller radius in mm; one roller count moves the tool by
            roller_radius * 2 pi / 512.
        sample_rate (float): device sample rate in Hz.
        cone_half_angle (float): validated workspace cone half-angle in degrees.
    """

    zero_offsets: ZeroOffsets = field(default_factory=ZeroOffsets)
    roller_radius: float = DEFAULT_ROLLER_RADIUS
    sample_rate: float = DEFAULT_SAMPLE_RATE
    cone_half_angle: float = DEFAULT_CONE_HALF_ANGLE

    def __post_init__(self):
        offsets = ZeroOffsets(*(int(v) for v in self.zero_offsets))
        object.__setattr__(self, "zero_offsets", offsets)
        for name, count in offsets._asdict().items():
            if not 0 <= count < CHANNEL_COUNTS[name]:
                raise InvalidInputError(f"Zero offset {name}={count} outside the channel range")
        if not self.roller_radius > 0:
            raise InvalidInputError(f"roller_radius must be > 0, got {self.roller_radius}")
        if not self.sample_rate > 0:
            raise InvalidInputError(f"sample_rate must be > 0, got {self.sample_rate}")
        if not self.cone_half_angle > 0:
            raise InvalidInputError(f"cone_half_angle must be > 0, got {self.cone_half_angle}")

    @classmethod
    def _convert(cls, values):
        offsets = values.get("zero_offsets")
        if isinstance(offsets, dict):
            values["zero_offsets"] = ZeroOffsets(**offsets)
        elif offsets is not None:
            values["zero_offsets"] = ZeroOffsets(*offsets)
        return values

    @property
    def translation_per_count(self):
        """Tool translation in mm for one roller count."""
        return self.roller_radius * 2 * np.pi / CHANNEL_COUNTS["ct"]

    def with_offsets(self, zero_offsets):
        return Calibration(
            zero_offsets=zero_offsets,
            roller_radius=self.roller_radius,
            sample_rate=self.sample_rate,
            cone_half_angle=self.cone_half_angle,
        )


def _wrap_roller(delta):
    half = CHANNEL_COUNTS["ct"] // 2
    return (delta + half) % CHANNEL_COUNTS["ct"] - half


def _first_roller_count(ct, calibration, start_depth=None):
    count = (ct - calibration.zero_offsets.ct) % CHANNEL_COUNTS["ct"]
    if start_depth is not None:
        turns = np.rint((start_depth / calibration.translation_per_count - count) / CHANNEL_COUNTS["ct"])
        count += CHANNEL_COUNTS["ct"] * int(turns)
    return int(count)


def _angles(frame_counts, zero):
    return {
        "phi1": (frame_counts["c1"] - zero.c1) * step_degrees("c1"),
        "phi2": (frame_counts["c2"] - zero.c2) * step_degrees("c2"),
        "phi3": (frame_counts["c3"] - zero.c3) * step_degrees("c3"),
    }


class StreamDecoder:
    """
    Decodes consecutive frames of one stream, unwrapping the roller channel.

    The first frame reads the roller within one turn of its zero, or in the turn nearest
    `start_depth` (mm) when the tool is already inserted further. Afterwards a jump of more
    than half a turn between frames is taken as a wrap.
    """

    def __init__(self, calibration: Calibration, start_depth=None):
        self._calibration = calibration
        self._start_depth = start_depth
        self.reset()

    def reset(self):
        self._previous = None
        self._unwrapped = 0

    @property
    def unwrapped_counts(self):
        return self._unwrapped

    def decode(self, frame: EncoderFrame):
        frame.check_range()
        zero = self._calibration.zero_offsets
        if self._previous is None:
            self._unwrapped = _first_roller_count(frame.ct, self._calibration, self._start_depth)
        else:
            self._unwrapped += _wrap_roller(frame.ct - self._previous)
        self._previous = frame.ct
        if self._unwrapped < 0:
            raise DecodeError("ct", f"tool retracted past the trocar point at t={frame.t}")
        return JointState(
            d=self._unwrapped * self._calibration.translation_per_count,
            t=frame.t,
            **_angles(frame.counts(), zero),
        )


def decode_frame(frame: EncoderFrame, calibration: Calibration, decoder: StreamDecoder = None):
    """
    Decode one frame; pass the stream's `decoder` to accumulate roller turns across frames.
    """
    if decoder is None:
        decoder = StreamDecoder(calibration)
    return decoder.decode(frame)


def _frame_arrays(frames):
    t = np.array([f.t for f in frames], dtype=float)
    counts = {name: np.array([getattr(f, name) for f in frames], dtype=np.int64) for name in CHANNELS}
    return t, counts


def decode_stream(frames: Sequence[EncoderFrame], calibration: Calibration, start_depth=None):
    """Vectorised equivalent of decoding every frame with one StreamDecoder."""
    frames = list(frames)
    for frame in frames:
        frame.check_range()
    t, counts = _frame_arrays(frames)
    zero = calibration.zero_offsets
    ct = counts["ct"]
    if len(ct) == 0:
        unwrapped = ct
    else:
        steps = _wrap_roller(np.diff(ct))
        first = _first_roller_count(ct[0], calibration, start_depth)
        unwrapped = first + np.concatenate([[0], np.cumsum(steps)])
    if np.any(unwrapped < 0):
        index = int(np.argmax(unwrapped < 0))
        raise DecodeError("ct", f"tool retracted past the trocar point at t={t[index]}")
    return JointSeries(
        t=t,
        d=unwrapped * calibration.translation_per_count,
        **_angles(counts, zero),
    )


def _quantize(values, zero, step):
    return zero + np.rint(np.asarray(values, dtype=float) / step).astype(np.int64)


def _encode_arrays(phi1, phi2, phi3, d, calibration):
    zero = calibration.zero_offsets
    counts = {
        "c1": _quantize(phi1, zero.c1, step_degrees("c1")),
        "c2": _quantize(phi2, zero.c2, step_degrees("c2")),
        "c3": _quantize(phi3, zero.c3, step_degrees("c3")),
    }
    roller = np.rint(np.asarray(d, dtype=float) / calibration.translation_per_count).astype(np.int64)
    counts["ct"] = (zero.ct + roller) % CHANNEL_COUNTS["ct"]
    return counts


def encode_state(q: JointState, calibration: Calibration):
    """
    Nearest-count quantization of a joint state.

    Raises:
        SaturationError: when an angle falls outside its channel's count range.
    """
    phi3 = 0.0 if q.phi3 is None else q.phi3
    counts = _encode_arrays(q.phi1, q.phi2, phi3, q.d, calibration)
    for name in ("c1", "c2", "c3"):
        count = int(counts[name])
        if not 0 <= count < CHANNEL_COUNTS[name]:
            raise SaturationError(name, f"count {count} not representable for {q}")
    return EncoderFrame(
        c1=int(counts["c1"]), c2=int(counts["c2"]), ct=int(counts["ct"]), c3=int(counts["c3"]), t=q.t
    )


def encode_series(joints: JointSeries, calibration: Calibration, saturate=False):
    """
    Encode a whole joint series.

    Args:
        joints (JointSeries): states to encode.
        calibration (Calibration): encoder calibration.
        saturate (bool): clip out-of-range counts and record them instead of raising.

    Returns:
        tuple: list of EncoderFrame and a list of (sample index, channel) saturations.
    """
    phi3 = joints.phi3.filled(0.0)
    counts = _encode_arrays(joints.phi1, joints.phi2, phi3, joints.d, calibration)
    saturated = []
    for name in ("c1", "c2", "c3"):
        outside = (counts[name] < 0) | (counts[name] >= CHANNEL_COUNTS[name])
        if not np.any(outside):
            continue
        if not saturate:
            index = int(np.argmax(outside))
            raise SaturationError(name, f"count {counts[name][index]} not representable at t={joints.t[index]}")
        for index in np.flatnonzero(outside):
            saturated.append((int(index), name))
        state.logger.warning(f"Saturated {int(np.sum(outside))} samples on channel {name}")
        counts[name] = np.clip(counts[name], 0, CHANNEL_COUNTS[name] - 1)
    saturated.sort()
    frames = [
        EncoderFrame(c1=int(c1), c2=int(c2), ct=int(ct), c3=int(c3), t=float(t))
        for c1, c2, ct, c3, t in zip(counts["c1"], counts["c2"], counts["ct"], counts["c3"], joints.t)
    ]
    return frames, saturated


def static_zero(frames: Sequence[EncoderFrame], min_frames=MIN_ZEROING_FRAMES, max_spread=MAX_ZEROING_SPREAD):
    """
    Zero offsets from a static acquisition: the half-to-even rounded mean count per channel.

    The roller channel is read relative to its first frame and wrapped into half a turn, so a
    tool resting on the 511/0 roll-over is still static.

    Raises:
        InsufficientDataError: fewer than `min_frames` frames.
        NotStaticError: a channel spreads over more than `max_spread` counts.
    """
    frames = list(frames)
    if len(frames) < min_frames:
        raise InsufficientDataError(f"Static zeroing needs >= {min_frames} frames, got {len(frames)}")
    for frame in frames:
        frame.check_range()
    _, counts = _frame_arrays(frames)
    offsets = {}
    for name in CHANNELS:
        values = counts[name]
        if name == "ct":
            values = values[0] + _wrap_roller(values - values[0])
        spread = int(values.max() - values.min())
        if spread > max_spread:
            raise NotStaticError(name, f"counts spread over {spread} > {max_spread} counts")
        offsets[name] = int(np.round(np.mean(values)))
    offsets["ct"] %= CHANNEL_COUNTS["ct"]
    return ZeroOffsets(**offsets)
