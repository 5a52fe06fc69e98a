# coding: utf-8
# Copyright (c) rcm_tracker developers
# Distributed under the terms of "New BSD License", see the LICENSE file.
from rcm_tracker.utils.errors import MetricComputationError, RcmTrackerError

__author__ = "rcm_tracker developers"
__copyright__ = "Copyright 2026, rcm_tracker developers"
__version__ = "0.1"
__maintainer__ = "rcm_tracker developers"
__status__ = "development"
__date__ = "Oct 18, 2026"


class FailureCollector:
    """
    Labels failures of named computations.

    In strict mode a failure is re-raised as MetricComputationError naming the computation.
    Otherwise `run` returns None and the message is kept in `failures`.

    Example::

        collect = FailureCollector(strict=False)
        volume = collect.run("volume", workspace_volume, traj)
    """

    caught = (RcmTrackerError, ValueError, ZeroDivisionError, FloatingPointError)

    def __init__(self, strict=True):
        self._strict = strict
        self._failures = {}

    @property
    def strict(self):
        return self._strict

    @property
    def failures(self):
        return dict(self._failures)

    def _record(self, name, error):
        if self._strict:
            raise MetricComputationError(name, str(error)) from error
        self._failures[name] = str(error)

    def run(self, name, function, *args, **kwargs):
        """Call `function` once under the collector's failure handling."""
        try:
            return function(*args, **kwargs)
        except self.caught as e:
            self._record(name, e)
            return None
