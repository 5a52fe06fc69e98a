# coding: utf-8
# Copyright (c) rcm_tracker developers
# Distributed under the terms of "New BSD License", see the LICENSE file.

import unittest

import numpy as np

from rcm_tracker.kinematics.model import TipTrajectory
from rcm_tracker.metrics.differentiation import (
    derivative_series,
    derivatives,
    differentiate,
    interior_slice,
    moving_average,
    sample_spacing,
)
from rcm_tracker.metrics.metrics import MetricConfig
from rcm_tracker.utils.errors import InsufficientDataError, InvalidInputError
from tests.trajectories import polynomial, stationary


class TestMovingAverage(unittest.TestCase):

    def test_affine_signals_pass(self):
        values = 3.0 * np.arange(50) - 7.0
        self.assertTrue(np.allclose(moving_average(values, 5), values, atol=1e-12))
        columns = np.column_stack([values, -values, np.full(50, 2.0)])
        self.assertTrue(np.allclose(moving_average(columns, 7), columns, atol=1e-12))

    def test_window(self):
        values = np.array([0.0, 0.0, 5.0, 0.0, 0.0])
        self.assertTrue(np.allclose(moving_average(values, 5), [0.0, 5 / 3, 1.0, 5 / 3, 0.0]))
        self.assertTrue(np.array_equal(moving_average(values, 1), values))
        for window in (0, 4, 2.5):
            with self.subTest(window=window):
                with self.assertRaises(InvalidInputError):
                    moving_average(values, window)


class TestSpacing(unittest.TestCase):

    def test_uniform_and_irregular(self):
        self.assertEqual(sample_spacing(np.arange(11) / 64), 1 / 64)
        irregular = np.array([0.0, 0.1, 0.3, 0.35])
        self.assertTrue(np.array_equal(sample_spacing(irregular), irregular))
        with self.assertRaises(InsufficientDataError):
            sample_spacing([0.0])


class TestDerivatives(unittest.TestCase):

    def test_sine_velocity(self):
        t = np.arange(301) / 100.0
        velocity = derivative_series(t, np.sin(2 * np.pi * t), 1, 5)[0]
        analytic = 2 * np.pi * np.cos(2 * np.pi * t)
        self.assertLess(np.max(np.abs(velocity - analytic)), 0.01 * 2 * np.pi)

    def test_cubic(self):
        trajectory = polynomial([1.0, 0.0, 0.0, 2.0], rate=100.0)
        velocity, acceleration, jerk = derivatives(trajectory)
        interior = interior_slice(len(trajectory), 5)
        self.assertTrue(np.allclose(jerk[interior, 0], 12.0, rtol=1e-6))
        self.assertTrue(np.allclose(jerk[:, 1:], 0.0))
        self.assertEqual(velocity.shape, (len(trajectory), 3))
        self.assertTrue(np.array_equal(differentiate(trajectory, 3), jerk))

    def test_stationary_is_exactly_zero(self):
        for order in (1, 2, 3):
            with self.subTest(order=order):
                self.assertFalse(np.any(differentiate(stationary(), order)))

    def test_irregular_sampling(self):
        t = np.concatenate([np.arange(0, 1, 0.01), 1.0 + np.arange(0, 1, 0.02)])
        trajectory = TipTrajectory(t, np.column_stack([5.0 * t, np.zeros_like(t), np.zeros_like(t)]))
        velocity = differentiate(trajectory, 1, MetricConfig(smoothing_window=1))
        self.assertTrue(np.allclose(velocity[:, 0], 5.0))

    def test_errors(self):
        t = np.arange(3) / 100.0
        with self.assertRaises(InsufficientDataError):
            derivative_series(t, t, 3, 5)
        with self.assertRaises(InvalidInputError):
            derivative_series(t, t, 4, 5)

    def test_interior_slice(self):
        self.assertEqual(interior_slice(100, 5), slice(5, 95))
        self.assertEqual(interior_slice(8, 5), slice(0, 8))


if __name__ == "__main__":
    unittest.main()
