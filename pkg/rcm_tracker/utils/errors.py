# coding: utf-8
# Copyright (c) rcm_tracker developers
# Distributed under the terms of "New BSD License", see the LICENSE file.

"""Exception hierarchy shared by all rcm_tracker modules."""

__author__ = "rcm_tracker developers"
__copyright__ = "Copyright 2026, rcm_tracker developers"
__version__ = "0.1"
__maintainer__ = "rcm_tracker developers"
__status__ = "development"
__date__ = "Oct 18, 2026"


class RcmTrackerError(Exception):
    """Base class of all errors raised by rcm_tracker; `exit_code` is used by the command line."""

    exit_code = 1


class InvalidInputError(RcmTrackerError, ValueError):
    pass


class DegenerateInputError(RcmTrackerError, ValueError):
    pass


class OrderingError(RcmTrackerError, ValueError):
    pass


class EmptyInputError(RcmTrackerError, ValueError):
    pass


class InsufficientDataError(RcmTrackerError, ValueError):
    pass


class _ChannelError(RcmTrackerError, ValueError):
    def __init__(self, channel, message):
        super().__init__(f"channel '{channel}': {message}")
        self.channel = channel


class DecodeError(_ChannelError):
    pass


class SaturationError(_ChannelError):
    pass


class NotStaticError(_ChannelError):
    pass


class InvalidFrameError(RcmTrackerError, ValueError):
    pass


class AlignmentError(RcmTrackerError, ValueError):
    exit_code = 3


class DivisionUndefinedError(RcmTrackerError, ZeroDivisionError):
    pass


class DegenerateGeometryError(RcmTrackerError, ValueError):
    pass


class MetricComputationError(RcmTrackerError, RuntimeError):
    exit_code = 4

    def __init__(self, metric, message):
        super().__init__(f"metric '{metric}' failed: {message}")
        self.metric = metric


class SimulationError(RcmTrackerError, ValueError):
    pass


class ParseError(RcmTrackerError, ValueError):
    exit_code = 2

    def __init__(self, message, missing_columns=()):
        if len(missing_columns) > 0:
            message = f"{message}; missing columns: {', '.join(missing_columns)}"
        super().__init__(message)
        self.missing_columns = tuple(missing_columns)


class OutputError(RcmTrackerError, OSError):
    exit_code = 5
