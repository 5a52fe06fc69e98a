# coding: utf-8
# Copyright (c) rcm_tracker developers
# Distributed under the terms of "New BSD License", see the LICENSE file.

"""
Validation of device joint streams against marker-based reference measurements.

The reference system tracks the center of motion C and the tool tip P; the tool vector
V = P - C, expressed in the device base frame, gives the reference joint angles and depth.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import pandas
from pyiron_base import state
from scipy.linalg import polar

from rcm_tracker.kinematics.model import RECONCILED, JointSeries, joint_angles_from_vectors
from rcm_tracker.kinematics.transform import Transform, is_rotation
from rcm_tracker.utils.errors import (
    AlignmentError,
    EmptyInputError,
    InsufficientDataError,
    InvalidFrameError,
    InvalidInputError,
    OrderingError,
)

__author__ = "rcm_tracker developers"
__copyright__ = "Copyright 2026, rcm_tracker developers"
__version__ = "0.1"
__maintainer__ = "rcm_tracker developers"
__status__ = "development"
__date__ = "Oct 18, 2026"

REFERENCE_RATE = 120.0
DEFAULT_GRID_RATE = 100.0
DEFAULT_MAX_LAG = 0.5
MIN_OVERLAP = 1.0
MIN_TOOL_VECTOR = 1.0
TRIAD_TOLERANCE = 1e-6

# reference comparison channel -> JointSeries attribute; phi3 is not compared
CHANNEL_ATTRIBUTES = {"phi1": "phi1", "phi2": "phi2", "translation": "d"}
CHANNEL_UNITS = {"phi1": "deg^2", "phi2": "deg^2", "translation": "mm^2"}


class MarkerStream:
    """
    Reference marker samples: center C (n, 3) and tip P (n, 3) in mm at times t (n,).
    """

    def __init__(self, t, center, tip, rate=REFERENCE_RATE):
        t = np.array(t, dtype=float).reshape(-1)
        center = np.array(center, dtype=float).reshape(-1, 3)
        tip = np.array(tip, dtype=float).reshape(-1, 3)
        if not len(t) == len(center) == len(tip):
            raise InvalidInputError("Marker columns differ in length.")
        if not all(np.all(np.isfinite(v)) for v in (t, center, tip)):
            raise InvalidInputError("Marker stream contains non-finite values.")
        if len(t) > 1 and not np.all(np.diff(t) > 0):
            raise OrderingError("Marker timestamps must be strictly increasing.")
        if not rate > 0:
            raise InvalidInputError(f"Marker rate must be > 0, got {rate}")
        self.t = t
        self.center = center
        self.tip = tip
        self.rate = float(rate)

    @property
    def tool_vectors(self):
        return self.tip - self.center

    def __len__(self):
        return len(self.t)

    def __repr__(self):
        return f"MarkerStream(n={len(self)}, rate={self.rate})"


@dataclass(frozen=True, eq=False)
class FrameTriad:
    """
    A measured frame: `axes` rows are the unit vectors i, j, k and `origin` its origin,
    all in the common camera coordinates.
    """

    axes: np.ndarray
    origin: np.ndarray

    def __post_init__(self):
        axes = np.array(self.axes, dtype=float)
        origin = np.array(self.origin, dtype=float).reshape(-1)
        if axes.shape != (3, 3) or origin.shape != (3,):
            raise InvalidFrameError(f"Expected 3x3 axes and a 3-vector origin, got {axes.shape}, {origin.shape}")
        if not is_rotation(axes, atol=TRIAD_TOLERANCE):
            raise InvalidFrameError("Triad axes are not a right-handed orthonormal set.")
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "origin", origin)

    @classmethod
    def identity(cls):
        return cls(np.eye(3), np.zeros(3))

    def coordinates(self, points):
        """Coordinates of camera-frame points in this frame."""
        return (np.asarray(points, dtype=float) - self.origin) @ self.axes.T


def estimate_frame_transform(static_device: FrameTriad, static_reference: FrameTriad):
    """
    Rigid transform taking reference-frame coordinates to device base-frame coordinates.

    Returns:
        Transform: p_device = R p_reference + t
    """
    for triad in (static_device, static_reference):
        if not isinstance(triad, FrameTriad):
            raise InvalidFrameError(f"Expected a FrameTriad, got {type(triad).__name__}")
    rotation, _ = polar(static_device.axes @ static_reference.axes.T)
    translation = static_device.axes @ (static_reference.origin - static_device.origin)
    return Transform(rotation, translation)


class ReferenceJoints(NamedTuple):
    joints: JointSeries
    dropped: tuple


def derive_reference_joints(
    markers: MarkerStream, transform: Transform, convention=RECONCILED, min_length=MIN_TOOL_VECTOR
):
    """
    Joint states of the reference system: angles of V = P - C in the device frame, d = |V|.

    Samples with |V| <= `min_length` mm are dropped and their indices returned.
    """
    vectors = transform.apply_vector(markers.tool_vectors)
    lengths = np.linalg.norm(vectors, axis=1)
    keep = lengths > min_length
    dropped = tuple(int(i) for i in np.flatnonzero(~keep))
    if len(dropped) > 0:
        state.logger.warning(
            f"Dropped {len(dropped)} degenerate marker samples with |P - C| <= {min_length} mm"
        )
        for index in dropped:
            state.logger.debug(f"degenerate marker sample {index} at t={markers.t[index]}")
    if np.any(keep):
        phi1, phi2, phi3 = joint_angles_from_vectors(vectors[keep], convention=convention)
    else:
        phi1 = phi2 = np.zeros(0)
        phi3 = np.ma.array(np.zeros(0))
    joints = JointSeries(t=markers.t[keep], phi1=phi1, phi2=phi2, phi3=phi3, d=lengths[keep])
    return ReferenceJoints(joints, dropped)


@dataclass(frozen=True, eq=False)
class AlignedPair:
    """Device and reference values of one channel on a common time grid."""

    channel: str
    t: np.ndarray
    device: np.ndarray
    reference: np.ndarray
    lag: float = 0.0

    def __post_init__(self):
        if self.channel not in CHANNEL_ATTRIBUTES:
            raise InvalidInputError(f"Unknown channel '{self.channel}'")
        if not len(self.t) == len(self.device) == len(self.reference):
            raise InvalidInputError("Aligned series differ in length.")

    def __len__(self):
        return len(self.t)


def _grid(start, stop, rate):
    count = int(np.floor((stop - start) * rate + 1e-9)) + 1
    return start + np.arange(count) / rate


def _overlap(device_t, reference_t, lag):
    return max(device_t[0], reference_t[0] + lag), min(device_t[-1], reference_t[-1] + lag)


def _resample(device, reference, grid, lag):
    out = {}
    for channel, attribute in CHANNEL_ATTRIBUTES.items():
        out[channel] = (
            np.interp(grid, device.t, getattr(device, attribute)),
            np.interp(grid, reference.t + lag, getattr(reference, attribute)),
        )
    return out


def _correlation(a, b):
    a = a - a.mean()
    b = b - b.mean()
    norm = np.sqrt(np.sum(a * a) * np.sum(b * b))
    if norm == 0:
        return 0.0
    return float(np.sum(a * b) / norm)


def estimate_lag(device: JointSeries, reference: JointSeries, grid_rate=DEFAULT_GRID_RATE,
                 max_lag=DEFAULT_MAX_LAG, min_overlap=MIN_OVERLAP):
    """
    Clock offset (seconds added to the reference timestamps) maximising the summed
    normalised cross-correlation of phi1, phi2 and translation. Candidates are multiples of
    the grid spacing within +-max_lag; ties go to the smallest |lag|.
    """
    steps = int(np.floor(max_lag * grid_rate + 1e-9))
    candidates = sorted(range(-steps, steps + 1), key=lambda k: (abs(k), k))
    best_lag, best_score = None, -np.inf
    for k in candidates:
        lag = k / grid_rate
        start, stop = _overlap(device.t, reference.t, lag)
        if stop - start < min_overlap:
            continue
        resampled = _resample(device, reference, _grid(start, stop, grid_rate), lag)
        score = sum(_correlation(dev, ref) for dev, ref in resampled.values())
        if score > best_score + 1e-12:
            best_lag, best_score = lag, score
    if best_lag is None:
        raise AlignmentError(f"No lag within +-{max_lag} s leaves {min_overlap} s of overlap")
    state.logger.info(f"Estimated reference clock lag {best_lag:+.4f} s (score {best_score:.4f})")
    return best_lag


def resample_align(device: JointSeries, reference: JointSeries, grid_rate=DEFAULT_GRID_RATE,
                   lag_search=True, max_lag=DEFAULT_MAX_LAG, min_overlap=MIN_OVERLAP):
    """
    Linearly interpolate both series onto a uniform grid over their overlap.

    Args:
        device (JointSeries): device joint stream.
        reference (JointSeries): reference joint stream.
        grid_rate (float): grid rate in Hz.
        lag_search (bool): correct the reference clock by :func:`estimate_lag` first.
        max_lag (float): lag search range in seconds.
        min_overlap (float): minimal overlap in seconds.

    Returns:
        dict: channel name -> AlignedPair for "phi1", "phi2" and "translation".
    """
    if not grid_rate > 0:
        raise InvalidInputError(f"grid_rate must be > 0, got {grid_rate}")
    if len(device) < 2 or len(reference) < 2:
        raise AlignmentError("Both series need at least two samples to align.")
    lag = estimate_lag(device, reference, grid_rate, max_lag, min_overlap) if lag_search else 0.0
    start, stop = _overlap(device.t, reference.t, lag)
    if stop - start < min_overlap:
        raise AlignmentError(
            f"Series overlap for {max(stop - start, 0.0):.3f} s, at least {min_overlap} s required"
        )
    grid = _grid(start, stop, grid_rate)
    state.logger.info(f"Resampling onto {len(grid)} grid points at {grid_rate} Hz from t={start}")
    return {
        channel: AlignedPair(channel, grid, dev, ref, lag)
        for channel, (dev, ref) in _resample(device, reference, grid, lag).items()
    }


def channel_mse(pair: AlignedPair):
    """Mean squared device-reference difference in squared channel units."""
    if len(pair) < 2:
        raise InsufficientDataError(f"MSE needs at least two aligned samples, got {len(pair)}")
    return float(np.mean((np.asarray(pair.device) - np.asarray(pair.reference)) ** 2))


def rmse(pair: AlignedPair):
    return float(np.sqrt(channel_mse(pair)))


def mse_summary(values):
    """Distribution of per-test MSE values: count, min, quartiles, max and mean."""
    values = np.asarray(values, dtype=float).reshape(-1)
    if len(values) == 0:
        raise EmptyInputError("No MSE values to summarise.")
    q1, median, q3 = np.percentile(values, [25, 50, 75])
    return {
        "count": int(len(values)),
        "min": float(values.min()),
        "q1": float(q1),
        "median": float(median),
        "q3": float(q3),
        "max": float(values.max()),
        "mean": float(values.mean()),
    }


def aligned_frame(pairs):
    """Plot-ready table of aligned pairs sharing one grid."""
    pairs = list(pairs.values()) if isinstance(pairs, dict) else list(pairs)
    if len(pairs) == 0:
        raise EmptyInputError("No aligned pairs given.")
    frame = pandas.DataFrame({"t": pairs[0].t})
    for pair in pairs:
        frame[f"{pair.channel}_device"] = pair.device
        frame[f"{pair.channel}_reference"] = pair.reference
    return frame
