# coding: utf-8
# Copyright (c) rcm_tracker developers
# Distributed under the terms of "New BSD License", see the LICENSE file.

import json
import os
import tempfile
import unittest

from pyiron_base import DataContainer

from rcm_tracker.acquisition.encoder import Calibration, ZeroOffsets
from rcm_tracker.metrics.metrics import MetricConfig
from rcm_tracker.utils.config import read_config_file
from rcm_tracker.utils.errors import ParseError


class TestConfigFiles(unittest.TestCase):

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.path = self._tmp.name

    def tearDown(self):
        self._tmp.cleanup()

    def _write(self, name, text):
        file_name = os.path.join(self.path, name)
        with open(file_name, "w") as f:
            f.write(text)
        return file_name

    def test_read_yaml_and_json(self):
        yaml_file = self._write("cal.yml", "roller_radius: 5.0\nsample_rate: 50\n")
        json_file = self._write("cal.json", json.dumps({"roller_radius": 5.0, "sample_rate": 50}))
        for file_name in (yaml_file, json_file):
            with self.subTest(file_name):
                data = read_config_file(file_name)
                self.assertIsInstance(data, DataContainer)
                self.assertEqual(data["roller_radius"], 5.0)

    def test_read_errors(self):
        with self.subTest("missing"):
            with self.assertRaises(ParseError):
                read_config_file(os.path.join(self.path, "nope.yml"))
        with self.subTest("extension"):
            with self.assertRaises(ParseError):
                read_config_file(self._write("cal.txt", "a: 1"))
        with self.subTest("syntax"):
            with self.assertRaises(ParseError):
                read_config_file(self._write("cal.json", "{not json"))
        with self.subTest("not a mapping"):
            with self.assertRaises(ParseError):
                read_config_file(self._write("cal.yaml", "- 1\n- 2\n"))

    def test_calibration_from_file(self):
        file_name = self._write(
            "cal.yaml", "zero_offsets: {c1: 500, c2: 520, ct: 3, c3: 2000}\nroller_radius: 4.5\n"
        )
        calibration = Calibration.from_file(file_name)
        self.assertEqual(calibration.zero_offsets, ZeroOffsets(500, 520, 3, 2000))
        self.assertEqual(calibration.roller_radius, 4.5)
        self.assertEqual(calibration.sample_rate, 100.0, msg="Missing keys take their defaults.")

    def test_round_trip_through_dict(self):
        calibration = Calibration(zero_offsets=ZeroOffsets(510, 515, 7, 2040), roller_radius=4.4)
        self.assertEqual(Calibration.from_dict(calibration.to_dict()), calibration)
        self.assertEqual(Calibration.from_dict({"zero_offsets": [510, 515, 7, 2040]}).zero_offsets.ct, 7)

    def test_unknown_and_invalid_keys(self):
        with self.assertRaises(ParseError):
            MetricConfig.from_dict({"smoothing_windw": 5})
        with self.assertRaises(ParseError):
            MetricConfig.from_dict({"smoothing_window": 4})

    def test_to_data_container(self):
        container = MetricConfig(idle_speed_threshold=2.0).to_data_container()
        self.assertIsInstance(container, DataContainer)
        self.assertEqual(container["idle_speed_threshold"], 2.0)
        self.assertEqual(container["jerk_mode"], "vector")


if __name__ == "__main__":
    unittest.main()
