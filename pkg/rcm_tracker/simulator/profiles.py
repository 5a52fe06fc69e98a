# coding: utf-8
# Copyright (c) rcm_tracker developers
# Distributed under the terms of "New BSD License", see the LICENSE file.

"""
Synthetic joint trajectories of the tracking device for testing without hardware.

The profiles are synthetic shapes at the scale of recorded box-trainer sessions; they do not
model the physiology of a surgeon's hand.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from pyiron_base import state

from rcm_tracker.acquisition.encoder import Calibration, encode_series
from rcm_tracker.kinematics.model import DEFAULT_CONE_HALF_ANGLE, JointSeries
from rcm_tracker.utils.config import ConfigMixin
from rcm_tracker.utils.errors import SimulationError

__author__ = "rcm_tracker developers"
__copyright__ = "Copyright 2026, rcm_tracker developers"
__version__ = "0.1"
__maintainer__ = "rcm_tracker developers"
__status__ = "development"
__date__ = "Oct 18, 2026"

HANDS = ("left", "right")
PHI3_RANGES = {"left": (-70.0, 40.0), "right": (-120.0, 10.0)}
PROFILES = ("cone-scan", "peg-transfer")

PEG_PHASES = 6
PEG_MIN_DURATION = 30.0
PEG_REALIGN_TIME = 50.0
# insertion depths in mm: lifted above the pegs and at a peg
PEG_LIFT_DEPTH = (40.5, 42.0)
PEG_GRASP_DEPTH = (92.0, 93.5)
# peg columns (|phi1|) and rows (phi2) in degrees for a 13 degree cone
PEG_COLUMN = (6.0, 6.5)
PEG_ROWS = (-5.0, -1.0, 3.0, -3.0, 1.0, 5.0)
PEG_ROW_JITTER = 0.3
# share of a phase spent still at each of its two dwells
PEG_DWELL_FRACTION = (0.22, 0.28)
# depth waypoints after an insertion, in units of the settle amplitude (mm)
PEG_SETTLE = (1.0, -0.7, 0.45, -0.25, 0.0)
PEG_SETTLE_AMPLITUDE = {"left": 4.0, "right": 6.0}
# relative durations of the moves
PEG_WEIGHTS = {"stroke": 1.5, "half_stroke": 0.9, "column": 1.0, "row": 0.8, "settle": 0.3}


def random_generator(seed):
    """Seeded PCG64 generator; the same seed gives the same stream on every platform."""
    return np.random.Generator(np.random.PCG64(seed))


def smoothstep(s):
    """Quintic 0 -> 1 ramp with vanishing first and second derivatives at both ends."""
    s = np.clip(s, 0.0, 1.0)
    return s**3 * (10.0 - 15.0 * s + 6.0 * s**2)


def _check_hand(hand):
    if hand not in HANDS:
        raise SimulationError(f"hand must be one of {HANDS}, got '{hand}'")


def _sample_times(duration, rate, include_end=False):
    count = int(round(duration * rate)) + (1 if include_end else 0)
    return np.arange(count) / rate


@dataclass(frozen=True)
class ScanParams(ConfigMixin):
    """
    Workspace scan parameters.

    Args:
        cone_half_angle (float): half-angle in degrees of the scanned cone.
        d_range (tuple): insertion depth range (min, max) in mm.
        duration (float): scan duration in s.
        rate (float): sample rate in Hz.
        phi3_range (tuple): self-rotation range (min, max) in degrees.
        sweep_frequency (float): revolutions per second of the gimbal sweep.
        axis_ratio (float): minor/major ratio of the elliptic boundary, 1 for a circle.
    """

    cone_half_angle: float = DEFAULT_CONE_HALF_ANGLE
    d_range: tuple = (40.0, 100.0)
    duration: float = 60.0
    rate: float = 100.0
    phi3_range: tuple = PHI3_RANGES["left"]
    sweep_frequency: float = 0.5
    axis_ratio: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "d_range", tuple(float(v) for v in self.d_range))
        object.__setattr__(self, "phi3_range", tuple(float(v) for v in self.phi3_range))
        if not 0 < self.cone_half_angle < 90:
            raise SimulationError(f"cone_half_angle must be in (0, 90), got {self.cone_half_angle}")
        if len(self.d_range) != 2 or not 0 < self.d_range[0] < self.d_range[1]:
            raise SimulationError(f"d_range must be positive and increasing, got {self.d_range}")
        if len(self.phi3_range) != 2 or not self.phi3_range[0] < self.phi3_range[1]:
            raise SimulationError(f"phi3_range must be increasing, got {self.phi3_range}")
        if not (-180 <= self.phi3_range[0] and self.phi3_range[1] < 180):
            raise SimulationError(f"phi3_range must lie within [-180, 180), got {self.phi3_range}")
        for name in ("duration", "rate", "sweep_frequency"):
            if not getattr(self, name) > 0:
                raise SimulationError(f"{name} must be > 0, got {getattr(self, name)}")
        if not 0 < self.axis_ratio <= 1:
            raise SimulationError(f"axis_ratio must be in (0, 1], got {self.axis_ratio}")

    @classmethod
    def for_hand(cls, hand, **kwargs):
        """Parameters with the self-rotation range observed for `hand`."""
        _check_hand(hand)
        kwargs.setdefault("phi3_range", PHI3_RANGES[hand])
        return cls(**kwargs)


@dataclass(frozen=True)
class NoiseParams(ConfigMixin):
    """Gaussian measurement noise; the seed fixes the noise stream."""

    angle_noise_sd: float = 0.0
    translation_noise_sd: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not self.angle_noise_sd >= 0 or not self.translation_noise_sd >= 0:
            raise SimulationError("Noise standard deviations must be >= 0.")
        if int(self.seed) != self.seed or self.seed < 0:
            raise SimulationError(f"seed must be a non-negative integer, got {self.seed}")
        object.__setattr__(self, "seed", int(self.seed))


def generate_cone_scan(p: ScanParams = None):
    """
    Spiral sweep of the gimbal angles out to the cone boundary, then along it.

    The radius grows with a quintic smoothstep reaching the boundary at 80 % of the duration;
    depth and self-rotation follow slow cosine sweeps over their ranges.

    Returns:
        JointSeries: round(duration * rate) samples at t = k / rate.
    """
    p = ScanParams() if p is None else p
    t = _sample_times(p.duration, p.rate)
    if len(t) < 2:
        raise SimulationError("Scan duration and rate give fewer than two samples.")
    radius = p.cone_half_angle * smoothstep(t / (0.8 * p.duration))
    theta = 2 * np.pi * p.sweep_frequency * t
    d_low, d_high = p.d_range
    phi3_low, phi3_high = p.phi3_range
    d = d_low + (d_high - d_low) * (1 - np.cos(2 * np.pi * p.sweep_frequency / 5 * t)) / 2
    phi3 = phi3_low + (phi3_high - phi3_low) * (1 - np.cos(2 * np.pi * p.sweep_frequency / 4 * t)) / 2
    return JointSeries(
        t=t,
        phi1=radius * np.cos(theta),
        phi2=p.axis_ratio * radius * np.sin(theta),
        phi3=phi3,
        d=d,
    )


def _waypoint_track(t, times, values):
    """
    Piecewise quintic-smoothstep interpolation between waypoints.

    Each segment ends at rest, so a joint whose waypoints repeat stays exactly constant.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    index = np.clip(np.searchsorted(times, t, side="right") - 1, 0, len(times) - 2)
    u = (t - times[index]) / (times[index + 1] - times[index])
    return values[index] + (values[index + 1] - values[index]) * smoothstep(u)


def _settle(depth, amplitude):
    return [("d", depth + amplitude * offset, PEG_WEIGHTS["settle"]) for offset in PEG_SETTLE]


def _transfer_moves(rng, hand, scale):
    """
    Start pose and per-phase move lists of the transfer task.

    A move is (joint, target, weight); the joint None holds the pose. Only one joint moves at
    a time.
    """
    rows = scale * (np.array(PEG_ROWS) + rng.uniform(-PEG_ROW_JITTER, PEG_ROW_JITTER, PEG_PHASES))
    column = scale * rng.uniform(*PEG_COLUMN, size=(PEG_PHASES, 2))
    grasp = rng.uniform(*PEG_GRASP_DEPTH, size=(PEG_PHASES, 2))
    lift = rng.uniform(*PEG_LIFT_DEPTH, size=(PEG_PHASES, 2))
    amplitude = PEG_SETTLE_AMPLITUDE[hand]
    phases = []
    for k in range(PEG_PHASES):
        following = (k + 1) % PEG_PHASES
        carry = [
            ("d", lift[k, 0], PEG_WEIGHTS["stroke"]),
            ("phi1", column[k, 1], PEG_WEIGHTS["column"]),
            ("d", grasp[k, 1], PEG_WEIGHTS["stroke"]),
        ] + _settle(grasp[k, 1], amplitude)
        middle = (lift[k, 1] + grasp[following, 0]) / 2
        back = [
            ("d", lift[k, 1], PEG_WEIGHTS["stroke"]),
            ("phi1", -column[following, 0], PEG_WEIGHTS["column"]),
            ("d", middle, PEG_WEIGHTS["half_stroke"]),
            ("phi2", rows[following], PEG_WEIGHTS["row"]),
            ("d", grasp[following, 0], PEG_WEIGHTS["half_stroke"]),
        ] + _settle(grasp[following, 0], amplitude)
        phases.append((carry, back))
    start = {"phi1": -column[0, 0], "phi2": rows[0], "d": grasp[0, 0]}
    return start, phases


def generate_peg_transfer_profile(duration=164.0, rate=100.0, hand="left", seed=0,
                                  cone_half_angle=DEFAULT_CONE_HALF_ANGLE):
    """
    Six grasp-lift-transfer-place phases.

    Each phase grasps a peg (dwell), lifts it to the shallow depth, tilts across to the target
    column, inserts and settles, places it (dwell) and returns the same way to the next peg's
    row. Every move changes a single joint along a smoothstep, the depth stays within
    [40, 100] mm over a span of about 55 mm and the pegs lie within half the cone. The right
    hand settles with larger depth oscillations and realigns its self-rotation abruptly
    around 50 s.

    Returns:
        JointSeries: samples at t = k / rate including t = duration.
    """
    _check_hand(hand)
    if duration < PEG_MIN_DURATION:
        raise SimulationError(f"Six transfer phases need a duration >= {PEG_MIN_DURATION} s, got {duration}")
    if not rate > 0:
        raise SimulationError(f"rate must be > 0, got {rate}")
    rng = random_generator(seed)
    t = _sample_times(duration, rate, include_end=True)
    period = duration / PEG_PHASES
    dwell = rng.uniform(*PEG_DWELL_FRACTION, size=(PEG_PHASES, 2)) * period
    start, phases = _transfer_moves(rng, hand, cone_half_angle / DEFAULT_CONE_HALF_ANGLE)

    times = [0.0]
    values = {name: [value] for name, value in start.items()}
    for k, (carry, back) in enumerate(phases):
        unit = (period - dwell[k].sum()) / sum(weight for _, _, weight in carry + back)
        moves = [(None, None, dwell[k, 0] / unit)] + carry + [(None, None, dwell[k, 1] / unit)] + back
        for joint, target, weight in moves:
            times.append(times[-1] + weight * unit)
            for name, track in values.items():
                track.append(target if name == joint else track[-1])
    times[-1] = duration
    tracks = {name: _waypoint_track(t, times, track) for name, track in values.items()}

    low, high = PHI3_RANGES[hand]
    span = high - low
    if hand == "left":
        phi3 = (low + high) / 2 + 0.4 * span * np.sin(2 * np.pi * t / (duration / 3))
    else:
        switch = min(PEG_REALIGN_TIME, 0.3 * duration)
        level = high - 0.2 * span - 0.6 * span * smoothstep((t - switch) / 0.3)
        phi3 = level + 0.15 * span * np.sin(2 * np.pi * 0.2 * t)
    state.logger.debug(f"peg transfer profile: hand={hand}, seed={seed}, {len(t)} samples")
    return JointSeries(t=t, phi3=phi3, **tracks)


class EncodedStream(NamedTuple):
    frames: list
    saturated: list
    start_depth: float


def corrupt_and_encode(joints: JointSeries, calibration: Calibration = None, noise: NoiseParams = None):
    """
    Add Gaussian noise to every channel and quantize to encoder frames.

    Values pushed outside a channel's range are clipped and listed in `saturated` as
    (sample index, channel). `start_depth` is the true depth of the first sample, which lets
    the decoder place the first roller reading in the right turn.
    """
    calibration = Calibration() if calibration is None else calibration
    noise = NoiseParams() if noise is None else noise
    rng = random_generator(noise.seed)
    n = len(joints)
    phi1 = joints.phi1 + rng.normal(0.0, noise.angle_noise_sd, n)
    phi2 = joints.phi2 + rng.normal(0.0, noise.angle_noise_sd, n)
    phi3 = joints.phi3.filled(0.0) + rng.normal(0.0, noise.angle_noise_sd, n)
    d = joints.d + rng.normal(0.0, noise.translation_noise_sd, n)
    saturated = [(int(i), "ct") for i in np.flatnonzero(d < 0)]
    if len(saturated) > 0:
        state.logger.warning(f"Clipped {len(saturated)} negative noisy depths to 0")
    noisy = JointSeries(t=joints.t, phi1=phi1, phi2=phi2, phi3=phi3, d=np.maximum(d, 0.0))
    frames, clipped = encode_series(noisy, calibration, saturate=True)
    start_depth = float(joints.d[0]) if n > 0 else 0.0
    return EncodedStream(frames, sorted(saturated + clipped), start_depth)
