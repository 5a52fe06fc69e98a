# coding: utf-8
# Copyright (c) rcm_tracker developers
# Distributed under the terms of "New BSD License", see the LICENSE file.

"""
Gesture-evaluation metrics of a tool tip trajectory.

Units: positions in mm and times in s. Every metric is a pure function of the trajectory and a
:class:`MetricConfig`; :func:`compute_metric_set` runs one shared differentiation pass.
"""

from dataclasses import dataclass, field, fields
from typing import Optional

import numpy as np
from scipy.integrate import trapezoid

from rcm_tracker.kinematics.model import TipTrajectory
from rcm_tracker.metrics.differentiation import derivative_series, interior_slice
from rcm_tracker.utils.config import ConfigMixin
from rcm_tracker.utils.decorators import FailureCollector
from rcm_tracker.utils.errors import (
    DegenerateGeometryError,
    DivisionUndefinedError,
    EmptyInputError,
    InsufficientDataError,
    InvalidInputError,
)

__author__ = "rcm_tracker developers"
__copyright__ = "Copyright 2026, rcm_tracker developers"
__version__ = "0.1"
__maintainer__ = "rcm_tracker developers"
__status__ = "development"
__date__ = "Oct 18, 2026"

VECTOR = "vector"
NORM_DERIVATIVE = "norm-derivative"
JERK_MODES = (VECTOR, NORM_DERIVATIVE)
IDLE_TIME_TOLERANCE = 1e-9

METRIC_FIELDS = (
    "time_total",
    "idle_pct",
    "path_length",
    "depth_workspace",
    "avg_speed",
    "avg_accel",
    "jerk",
    "fluidity",
    "volume",
)

METRIC_UNITS = {
    "time_total": "s",
    "idle_pct": "%",
    "path_length": "mm",
    "depth_workspace": "mm",
    "avg_speed": "mm/s",
    "avg_accel": "mm/s^2",
    "jerk": "mm/s^3",
    "fluidity": "s^3/mm",
    "volume": "mm^3",
}


@dataclass(frozen=True)
class MetricConfig(ConfigMixin):
    """
    Parameters the metric definitions leave open.

    Args:
        idle_speed_threshold (float): tip speed in mm/s below which the tool counts as idle.
        idle_min_duration (float): shortest idle interval in s that is counted.
        smoothing_window (int): odd moving-average window in samples.
        jerk_epsilon (float): jerk below which fluidity is undefined.
        frustum_band_fraction (float): depth fraction of the deepest and shallowest bands.
        frustum_radius_percentile (float): radial percentile taken within each band.
        jerk_mode (str): "vector" for |d3r/dt3| or "norm-derivative" for |d3|r|/dt3|.
    """

    idle_speed_threshold: float = 1.0
    idle_min_duration: float = 0.5
    smoothing_window: int = 5
    jerk_epsilon: float = 1e-9
    frustum_band_fraction: float = 0.1
    frustum_radius_percentile: float = 95.0
    jerk_mode: str = VECTOR

    def __post_init__(self):
        window = self.smoothing_window
        if int(window) != window or window < 1 or window % 2 == 0:
            raise InvalidInputError(f"smoothing_window must be an odd integer >= 1, got {window}")
        object.__setattr__(self, "smoothing_window", int(window))
        for name in ("idle_speed_threshold", "idle_min_duration", "jerk_epsilon"):
            if not getattr(self, name) > 0:
                raise InvalidInputError(f"{name} must be > 0, got {getattr(self, name)}")
        if not 0 < self.frustum_band_fraction <= 0.5:
            raise InvalidInputError(
                f"frustum_band_fraction must be in (0, 0.5], got {self.frustum_band_fraction}"
            )
        if not 0 < self.frustum_radius_percentile <= 100:
            raise InvalidInputError(
                f"frustum_radius_percentile must be in (0, 100], got {self.frustum_radius_percentile}"
            )
        if self.jerk_mode not in JERK_MODES:
            raise InvalidInputError(f"jerk_mode must be one of {JERK_MODES}, got '{self.jerk_mode}'")


@dataclass(frozen=True)
class MetricSet:
    """
    The nine metrics of one hand. `fluidity` is None when the jerk is below epsilon; with a
    non-strict computation failed metrics are None and explained in `failures`.
    """

    time_total: Optional[float]
    idle_pct: Optional[float]
    path_length: Optional[float]
    depth_workspace: Optional[float]
    avg_speed: Optional[float]
    avg_accel: Optional[float]
    jerk: Optional[float]
    fluidity: Optional[float]
    volume: Optional[float]
    failures: dict = field(default_factory=dict, compare=False)

    def to_dict(self):
        """Flat metric name -> value map; undefined values are None."""
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name in METRIC_FIELDS}

    @classmethod
    def from_dict(cls, values, failures=None):
        missing = [name for name in METRIC_FIELDS if name not in values]
        if len(missing) > 0:
            raise InvalidInputError(f"Metric values missing for {missing}")
        return cls(**{name: values[name] for name in METRIC_FIELDS}, failures=dict(failures or {}))

    @property
    def complete(self):
        return len(self.failures) == 0


def _check_samples(traj, minimum, what):
    if len(traj) == 0:
        raise EmptyInputError(f"{what} of an empty trajectory is undefined.")
    if len(traj) < minimum:
        raise InsufficientDataError(f"{what} needs at least {minimum} samples, got {len(traj)}")


def _config(cfg):
    return MetricConfig() if cfg is None else cfg


def total_time(traj: TipTrajectory):
    _check_samples(traj, 1, "Total time")
    return float(traj.t[-1] - traj.t[0])


def _duration(traj):
    duration = total_time(traj)
    if duration <= 0:
        raise DivisionUndefinedError("Trajectory has zero duration.")
    return duration


def tip_speeds(traj: TipTrajectory, cfg=None):
    """Scalar tip speed |dr/dt| per sample, mm/s."""
    cfg = _config(cfg)
    _check_samples(traj, 2, "Speed")
    velocity = derivative_series(traj.t, traj.xyz, 1, cfg.smoothing_window)[0]
    return np.linalg.norm(velocity, axis=1)


def idle_intervals(t, speeds, threshold, min_duration):
    """
    Maximal runs of samples with speed below `threshold` lasting at least `min_duration`.

    A sample holds until the next one, so a run stops at the timestamp following its last
    sample, or at the last timestamp.

    Returns:
        list: (start time, stop time) per counted run.
    """
    t = np.asarray(t, dtype=float)
    idle = np.asarray(speeds) < threshold
    edges = np.diff(np.concatenate([[0], idle.astype(int), [0]]))
    starts = np.flatnonzero(edges == 1)
    stops = np.minimum(np.flatnonzero(edges == -1), len(t) - 1)
    # timestamps k / rate need not subtract to an exact multiple of the period
    tolerance = IDLE_TIME_TOLERANCE * max(1.0, abs(min_duration))
    return [
        (float(t[i]), float(t[j]))
        for i, j in zip(starts, stops)
        if t[j] - t[i] >= min_duration - tolerance
    ]


def idle_time_pct(traj: TipTrajectory, cfg=None, speeds=None):
    """Percentage of the task spent in idle intervals."""
    cfg = _config(cfg)
    _check_samples(traj, 2, "Idle time")
    duration = _duration(traj)
    if speeds is None:
        speeds = tip_speeds(traj, cfg)
    intervals = idle_intervals(traj.t, speeds, cfg.idle_speed_threshold, cfg.idle_min_duration)
    idle = sum(stop - start for start, stop in intervals)
    return float(min(100.0, 100.0 * idle / duration))


def path_length(traj: TipTrajectory):
    _check_samples(traj, 1, "Path length")
    return float(np.sum(np.linalg.norm(np.diff(traj.xyz, axis=0), axis=1)))


def depth_workspace(traj: TipTrajectory):
    """Span z_max - z_min of the tip depth."""
    _check_samples(traj, 1, "Depth workspace")
    return float(np.ptp(traj.xyz[:, 2]))


def average_speed(traj: TipTrajectory):
    return path_length(traj) / _duration(traj)


def speed_variation(speeds, duration):
    """Summed absolute change of consecutive speeds per unit time."""
    speeds = np.asarray(speeds, dtype=float).reshape(-1)
    if len(speeds) < 2:
        raise InsufficientDataError(f"Speed variation needs at least two speeds, got {len(speeds)}")
    if not duration > 0:
        raise DivisionUndefinedError(f"Speed variation over duration {duration} is undefined.")
    return float(np.sum(np.abs(np.diff(speeds))) / duration)


def average_acceleration(traj: TipTrajectory, cfg=None, speeds=None):
    cfg = _config(cfg)
    _check_samples(traj, 3, "Average acceleration")
    if speeds is None:
        speeds = tip_speeds(traj, cfg)
    return speed_variation(speeds, _duration(traj))


def fluidity_from_jerk(jerk, epsilon=1e-9):
    """Reciprocal of the jerk, None when the jerk is below `epsilon`."""
    if jerk < epsilon:
        return None
    return 1.0 / jerk


def _jerk_magnitude(traj, cfg, third=None):
    if cfg.jerk_mode == NORM_DERIVATIVE:
        radius = np.linalg.norm(traj.xyz, axis=1)
        return np.abs(derivative_series(traj.t, radius, 3, cfg.smoothing_window)[-1])
    if third is None:
        third = derivative_series(traj.t, traj.xyz, 3, cfg.smoothing_window)[-1]
    return np.linalg.norm(third, axis=1)


def jerk_and_fluidity(traj: TipTrajectory, cfg=None, third=None):
    """
    Time-averaged jerk magnitude and its reciprocal, the motion fluidity.

    The average is a trapezoidal integral over the interior samples divided by their time span.

    Returns:
        tuple: (jerk in mm/s^3, fluidity or None)
    """
    cfg = _config(cfg)
    _check_samples(traj, 4, "Jerk")
    _duration(traj)
    magnitude = _jerk_magnitude(traj, cfg, third)
    interior = interior_slice(len(traj), cfg.smoothing_window)
    t = traj.t[interior]
    jerk = float(trapezoid(magnitude[interior], t) / (t[-1] - t[0]))
    return jerk, fluidity_from_jerk(jerk, cfg.jerk_epsilon)


def frustum_volume(h, R, r):
    """Volume of a truncated cone of height h with end radii R and r."""
    return float(np.pi * h * (R * R + R * r + r * r) / 3.0)


def workspace_cone(traj: TipTrajectory, cfg=None):
    """
    Frustum parameters of the explored workspace.

    Returns:
        dict: h (depth span), R and r (radial percentile in the deepest and shallowest depth
        bands) and apex_half_angle, the frustum flank angle to the depth axis in degrees.
    """
    cfg = _config(cfg)
    h = depth_workspace(traj)
    if h <= 0:
        raise DegenerateGeometryError("Workspace volume needs a depth span > 0.")
    z = traj.xyz[:, 2]
    radius = np.hypot(traj.xyz[:, 0], traj.xyz[:, 1])
    band = cfg.frustum_band_fraction * h
    deep = radius[z >= z.max() - band]
    shallow = radius[z <= z.min() + band]
    R = float(np.percentile(deep, cfg.frustum_radius_percentile))
    r = float(np.percentile(shallow, cfg.frustum_radius_percentile))
    return {"h": h, "R": R, "r": r, "apex_half_angle": float(np.degrees(np.arctan2(abs(R - r), h)))}


def workspace_volume(traj: TipTrajectory, cfg=None):
    cone = workspace_cone(traj, cfg)
    return frustum_volume(cone["h"], cone["R"], cone["r"])


def _session_volume(traj, cfg):
    # a flat or point-like workspace encloses no volume
    if depth_workspace(traj) == 0:
        return 0.0
    return workspace_volume(traj, cfg)


def compute_metric_set(traj: TipTrajectory, cfg=None, strict=True):
    """
    All nine metrics with one shared differentiation pass.

    Args:
        traj (TipTrajectory): tip positions.
        cfg (MetricConfig): metric parameters; defaults when None.
        strict (bool): raise MetricComputationError on the first failing metric. Otherwise
            failed metrics are None and listed in `MetricSet.failures`.

    Returns:
        MetricSet
    """
    cfg = _config(cfg)
    collect = FailureCollector(strict=strict)
    order = min(3, len(traj) - 1)
    shared = []
    if order >= 1:
        shared = collect.run(
            "differentiation", derivative_series, traj.t, traj.xyz, order, cfg.smoothing_window
        ) or []
    speeds = np.linalg.norm(shared[0], axis=1) if len(shared) >= 1 else None
    third = shared[2] if len(shared) == 3 else None

    jerk_pair = collect.run("jerk", jerk_and_fluidity, traj, cfg, third)
    jerk, fluidity = (None, None) if jerk_pair is None else jerk_pair
    return MetricSet(
        time_total=collect.run("time_total", total_time, traj),
        idle_pct=collect.run("idle_pct", idle_time_pct, traj, cfg, speeds),
        path_length=collect.run("path_length", path_length, traj),
        depth_workspace=collect.run("depth_workspace", depth_workspace, traj),
        avg_speed=collect.run("avg_speed", average_speed, traj),
        avg_accel=collect.run("avg_accel", average_acceleration, traj, cfg, speeds),
        jerk=jerk,
        fluidity=fluidity,
        volume=collect.run("volume", _session_volume, traj, cfg),
        failures=collect.failures,
    )
