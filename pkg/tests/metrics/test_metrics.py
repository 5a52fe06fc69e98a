# coding: utf-8
# Copyright (c) rcm_tracker developers
# Distributed under the terms of "New BSD License", see the LICENSE file.

import unittest

import numpy as np

from rcm_tracker.kinematics.model import TipTrajectory
from rcm_tracker.metrics.metrics import (
    METRIC_FIELDS,
    NORM_DERIVATIVE,
    MetricConfig,
    MetricSet,
    average_acceleration,
    average_speed,
    compute_metric_set,
    depth_workspace,
    fluidity_from_jerk,
    frustum_volume,
    idle_intervals,
    idle_time_pct,
    jerk_and_fluidity,
    path_length,
    speed_variation,
    total_time,
    workspace_cone,
    workspace_volume,
)
from rcm_tracker.utils.errors import (
    DegenerateGeometryError,
    DivisionUndefinedError,
    InvalidInputError,
    MetricComputationError,
)
from tests.trajectories import helix, idle_then_move, polynomial, stationary, straight_line


class TestBasicMetrics(unittest.TestCase):

    def test_stationary(self):
        metrics = compute_metric_set(stationary(duration=5.0))
        self.assertAlmostEqual(metrics.time_total, 5.0)
        self.assertEqual(metrics.path_length, 0.0)
        self.assertEqual(metrics.avg_speed, 0.0)
        self.assertEqual(metrics.depth_workspace, 0.0)
        self.assertEqual(metrics.idle_pct, 100.0)
        self.assertEqual(metrics.avg_accel, 0.0)
        self.assertEqual(metrics.jerk, 0.0)
        self.assertIsNone(metrics.fluidity)
        self.assertEqual(metrics.volume, 0.0)
        self.assertTrue(metrics.complete)

    def test_straight_line(self):
        trajectory = straight_line(speed=10.0, duration=10.0)
        self.assertAlmostEqual(path_length(trajectory), 100.0, places=9)
        self.assertAlmostEqual(average_speed(trajectory), 10.0, places=9)
        self.assertEqual(idle_time_pct(trajectory), 0.0)
        self.assertAlmostEqual(average_acceleration(trajectory), 0.0, places=6)
        self.assertLess(jerk_and_fluidity(trajectory)[0], 1e-6)

    def test_circle_length(self):
        angle = np.linspace(0.0, 2 * np.pi, 1000)
        trajectory = TipTrajectory(np.arange(1000) / 100.0, np.column_stack([np.cos(angle), np.sin(angle), np.zeros(1000)]))
        self.assertAlmostEqual(path_length(trajectory) / (2 * np.pi), 1.0, delta=1e-4)

    def test_session_scale_average_speed(self):
        trajectory = straight_line(speed=2043.0 / 164.0, duration=164.0)
        self.assertAlmostEqual(total_time(trajectory), 164.0)
        self.assertAlmostEqual(average_speed(trajectory), 12.47, delta=0.02)

    def test_depth_workspace(self):
        trajectory = TipTrajectory([0.0, 1.0, 2.0], [[0, 0, 40.0], [0, 0, 95.0], [5.0, 0, 60.0]])
        self.assertEqual(depth_workspace(trajectory), 55.0)

    def test_zero_duration(self):
        trajectory = TipTrajectory([1.0], [[0.0, 0.0, 10.0]])
        self.assertEqual(total_time(trajectory), 0.0)
        with self.assertRaises(DivisionUndefinedError):
            average_speed(trajectory)


class TestIdle(unittest.TestCase):

    def test_half_idle(self):
        self.assertAlmostEqual(idle_time_pct(idle_then_move(82.0, 82.0)), 50.0, delta=0.1)

    def test_intervals(self):
        t = np.arange(7.0)
        speeds = [0.0, 0.0, 5.0, 0.0, 0.0, 0.0, 5.0]
        self.assertEqual(idle_intervals(t, speeds, 1.0, 2.5), [(3.0, 6.0)])
        self.assertEqual(idle_intervals(t, speeds, 1.0, 1.5), [(0.0, 2.0), (3.0, 6.0)])
        self.assertEqual(idle_intervals(t, speeds, 10.0, 0.5), [(0.0, 6.0)])

    def test_runs_of_minimum_duration(self):
        t = np.arange(400) / 100.0
        speeds = np.tile(np.repeat([0.0, 5.0], 50), 4)
        intervals = idle_intervals(t, speeds, 1.0, 0.5)
        self.assertEqual(len(intervals), 4)
        self.assertEqual(intervals[0], (0.0, 0.5))
        self.assertAlmostEqual(sum(stop - start for start, stop in intervals), 2.0, places=9)
        self.assertEqual(idle_intervals(t, speeds, 1.0, 0.51), [])

    def test_threshold(self):
        trajectory = straight_line(speed=0.5, duration=10.0)
        self.assertEqual(idle_time_pct(trajectory), 100.0)
        self.assertEqual(idle_time_pct(trajectory, MetricConfig(idle_speed_threshold=0.4)), 0.0)


class TestAcceleration(unittest.TestCase):

    def test_speed_ramp(self):
        trajectory = polynomial([0.0, 0.0, 0.5], duration=10.0, rate=100.0)
        self.assertAlmostEqual(average_acceleration(trajectory), 1.0, delta=0.01)

    def test_speed_variation(self):
        self.assertEqual(speed_variation([0.0, 2.0, 1.0, 3.0], 5.0), 1.0)
        with self.assertRaises(DivisionUndefinedError):
            speed_variation([0.0, 1.0], 0.0)


class TestJerk(unittest.TestCase):

    def test_cubic(self):
        jerk, fluidity = jerk_and_fluidity(polynomial([0.0, 0.0, 0.0, 1.0], rate=100.0))
        self.assertAlmostEqual(jerk, 6.0, delta=0.02 * 6.0)
        self.assertAlmostEqual(fluidity, 1 / jerk)

    def test_norm_derivative_mode(self):
        t = np.arange(401) / 100.0
        trajectory = TipTrajectory(t, np.column_stack([1.0 + t**3, np.zeros_like(t), np.zeros_like(t)]))
        vector, _ = jerk_and_fluidity(trajectory)
        norm, _ = jerk_and_fluidity(trajectory, MetricConfig(jerk_mode=NORM_DERIVATIVE))
        self.assertAlmostEqual(vector, 6.0, places=4)
        self.assertAlmostEqual(norm, vector, places=6)

    def test_fluidity(self):
        self.assertAlmostEqual(fluidity_from_jerk(163.73), 61.08e-4, places=6)
        self.assertIsNone(fluidity_from_jerk(0.0))
        self.assertIsNone(fluidity_from_jerk(1e-3, epsilon=1e-2))


class TestVolume(unittest.TestCase):

    def test_frustum(self):
        self.assertAlmostEqual(frustum_volume(30.0, 10.0, 10.0), 9424.78, places=2)
        self.assertAlmostEqual(frustum_volume(30.0, 10.0, 0.0), 3141.59, places=2)
        self.assertAlmostEqual(frustum_volume(50.0, 12.0, 4.0), 10890.85, places=2)

    def test_workspace_cone(self):
        angle = np.linspace(0.0, 2 * np.pi, 8, endpoint=False)
        rings = [(40.0, 4.0), (70.0, 30.0), (100.0, 20.0)]
        xyz = np.concatenate(
            [np.column_stack([radius * np.cos(angle), radius * np.sin(angle), np.full(8, z)]) for z, radius in rings]
        )
        trajectory = TipTrajectory(np.arange(len(xyz)) / 100.0, xyz)
        cone = workspace_cone(trajectory)
        self.assertAlmostEqual(cone["h"], 60.0)
        self.assertAlmostEqual(cone["R"], 20.0)
        self.assertAlmostEqual(cone["r"], 4.0)
        self.assertAlmostEqual(cone["apex_half_angle"], np.degrees(np.arctan2(16.0, 60.0)))
        self.assertAlmostEqual(workspace_volume(trajectory), frustum_volume(60.0, 20.0, 4.0))

    def test_flat_workspace(self):
        with self.assertRaises(DegenerateGeometryError):
            workspace_volume(straight_line(axis=0))


class TestInvariances(unittest.TestCase):

    def setUp(self):
        self.trajectory = helix()
        self.metrics = compute_metric_set(self.trajectory)

    def _assert_close(self, first, second, names, factor=1.0):
        for name in names:
            with self.subTest(name):
                self.assertTrue(np.isclose(getattr(second, name), factor * getattr(first, name), rtol=1e-6, atol=1e-9))

    def test_scaling(self):
        k = 2.0
        scaled = compute_metric_set(self.trajectory.scaled(k), MetricConfig(idle_speed_threshold=k))
        self._assert_close(self.metrics, scaled, ["path_length", "depth_workspace", "avg_speed", "avg_accel", "jerk"], k)
        self._assert_close(self.metrics, scaled, ["volume"], k**3)
        self._assert_close(self.metrics, scaled, ["time_total", "idle_pct"])

    def test_time_shift(self):
        shifted = compute_metric_set(self.trajectory.shifted(12.5))
        self._assert_close(self.metrics, shifted, [f for f in METRIC_FIELDS if f != "idle_pct"])
        self.assertEqual(shifted.idle_pct, self.metrics.idle_pct)

    def test_reversal(self):
        reversed_metrics = compute_metric_set(self.trajectory.reversed())
        self._assert_close(self.metrics, reversed_metrics, ["path_length", "depth_workspace", "volume", "time_total"])


class TestMetricSet(unittest.TestCase):

    def test_failures(self):
        trajectory = TipTrajectory([0.0, 0.1, 0.2], [[0, 0, 10.0], [1.0, 0, 12.0], [2.0, 0, 15.0]])
        with self.assertRaises(MetricComputationError) as context:
            compute_metric_set(trajectory)
        self.assertEqual(context.exception.metric, "jerk")
        metrics = compute_metric_set(trajectory, strict=False)
        self.assertFalse(metrics.complete)
        self.assertEqual(set(metrics.failures), {"jerk"})
        self.assertIsNone(metrics.jerk)
        self.assertIsNone(metrics.fluidity)
        self.assertAlmostEqual(metrics.depth_workspace, 5.0)

    def test_single_sample(self):
        metrics = compute_metric_set(TipTrajectory([0.0], [[0.0, 0.0, 10.0]]), strict=False)
        self.assertEqual(metrics.time_total, 0.0)
        self.assertEqual(metrics.path_length, 0.0)
        self.assertEqual(metrics.volume, 0.0)
        self.assertEqual(set(metrics.failures), {"idle_pct", "avg_speed", "avg_accel", "jerk"})

    def test_round_trip(self):
        metrics = compute_metric_set(helix(duration=5.0))
        values = metrics.to_dict()
        self.assertEqual(tuple(values), METRIC_FIELDS)
        self.assertEqual(MetricSet.from_dict(values), metrics)
        with self.assertRaises(InvalidInputError):
            MetricSet.from_dict({"time_total": 1.0})

    def test_config_validation(self):
        for kwargs in (
            {"smoothing_window": 4},
            {"idle_speed_threshold": 0.0},
            {"frustum_band_fraction": 0.6},
            {"frustum_radius_percentile": 0.0},
            {"jerk_mode": "scalar"},
        ):
            with self.subTest(**kwargs):
                with self.assertRaises(InvalidInputError):
                    MetricConfig(**kwargs)


if __name__ == "__main__":
    unittest.main()
