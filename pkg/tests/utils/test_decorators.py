# coding: utf-8
# Copyright (c) rcm_tracker developers
# Distributed under the terms of "New BSD License", see the LICENSE file.

import unittest

from rcm_tracker.utils.decorators import FailureCollector
from rcm_tracker.utils.errors import DegenerateGeometryError, MetricComputationError


def _fails():
    raise DegenerateGeometryError("zero depth")


class TestFailureCollector(unittest.TestCase):

    def setUp(self):
        self.function_run_counter = 0

    def _counted(self, value):
        self.function_run_counter += 1
        return value

    def test_passes_results_through(self):
        collect = FailureCollector()
        self.assertEqual(collect.run("speed", self._counted, 5), 5)
        self.assertEqual(self.function_run_counter, 1)
        self.assertEqual(collect.failures, {})

    def test_strict_labels_failure(self):
        collect = FailureCollector(strict=True)
        with self.assertRaises(MetricComputationError) as context:
            collect.run("volume", _fails)
        self.assertEqual(context.exception.metric, "volume")
        self.assertIn("zero depth", str(context.exception))
        self.assertIsInstance(context.exception.__cause__, DegenerateGeometryError)

    def test_lenient_records_failure(self):
        collect = FailureCollector(strict=False)
        self.assertIsNone(collect.run("volume", _fails))
        self.assertEqual(collect.run("speed", self._counted, 3), 3)
        self.assertEqual(list(collect.failures), ["volume"])
        self.assertIn("zero depth", collect.failures["volume"])

    def test_failures_are_a_copy(self):
        collect = FailureCollector(strict=False)
        collect.run("volume", _fails)
        failures = collect.failures
        failures.clear()
        self.assertEqual(list(collect.failures), ["volume"])
        self.assertFalse(callable(collect))

    def test_unrelated_errors_propagate(self):
        collect = FailureCollector(strict=False)

        def broken():
            raise KeyError("bug")

        with self.assertRaises(KeyError):
            collect.run("speed", broken)


if __name__ == "__main__":
    unittest.main()
