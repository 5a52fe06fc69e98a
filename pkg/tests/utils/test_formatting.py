# coding: utf-8
# Copyright (c) rcm_tracker developers
# Distributed under the terms of "New BSD License", see the LICENSE file.

import unittest

import numpy as np

from rcm_tracker.utils.formatting import format_fixed, rounded


class TestRounded(unittest.TestCase):

    def test_scalars(self):
        self.assertEqual(rounded(1.23456789, 3), 1.235)
        self.assertEqual(rounded(np.float64(2.5), 0), 2.0)
        self.assertIs(rounded(True), True)
        self.assertEqual(rounded(np.int64(7)), 7)
        self.assertIsNone(rounded(None))
        self.assertEqual(rounded("text"), "text")

    def test_negative_zero(self):
        self.assertEqual(str(rounded(-0.00001, 3)), "0.0")

    def test_precision_by_key(self):
        out = rounded({"phi1": 1.234567, "d": 1.234567, "fluidity": 0.0061076154, "other": 1.23456789})
        self.assertEqual(out, {"phi1": 1.2346, "d": 1.235, "fluidity": 0.00610762, "other": 1.234568})

    def test_nested(self):
        out = rounded({"left": {"gesture_control": {"avg_speed": 12.456789, "fluidity": None}}, "x": [1.23456, np.array([2.0])]})
        self.assertEqual(out["left"]["gesture_control"], {"avg_speed": 12.457, "fluidity": None})
        self.assertEqual(out["x"], [1.235, [2.0]])


class TestFormatFixed(unittest.TestCase):

    def test_format_fixed(self):
        self.assertEqual(format_fixed(12.46341, 3), "12.463")
        self.assertEqual(format_fixed(3, 2), "3.00")
        self.assertEqual(format_fixed(-0.00001, 3), "0.000")
        self.assertEqual(format_fixed(None), "")
        self.assertEqual(format_fixed(float("nan")), "")


if __name__ == "__main__":
    unittest.main()
