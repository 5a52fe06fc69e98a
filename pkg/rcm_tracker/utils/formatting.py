# coding: utf-8
# Copyright (c) rcm_tracker developers
# Distributed under the terms of "New BSD License", see the LICENSE file.

"""Fixed-precision rendering so written reports and tables diff cleanly."""

from functools import singledispatch

import numpy as np

__author__ = "rcm_tracker developers"
__copyright__ = "Copyright 2026, rcm_tracker developers"
__version__ = "0.1"
__maintainer__ = "rcm_tracker developers"
__status__ = "development"
__date__ = "Oct 18, 2026"

ANGLE_DIGITS = 4
LENGTH_DIGITS = 3
DEFAULT_DIGITS = 6

# decimal places per quantity name
PRECISION = {
    "t": 6,
    "phi1": ANGLE_DIGITS,
    "phi2": ANGLE_DIGITS,
    "phi3": ANGLE_DIGITS,
    "d": LENGTH_DIGITS,
    "x": LENGTH_DIGITS,
    "y": LENGTH_DIGITS,
    "z": LENGTH_DIGITS,
    "time_total": LENGTH_DIGITS,
    "idle_pct": LENGTH_DIGITS,
    "path_length": LENGTH_DIGITS,
    "depth_workspace": LENGTH_DIGITS,
    "avg_speed": LENGTH_DIGITS,
    "avg_accel": LENGTH_DIGITS,
    "jerk": LENGTH_DIGITS,
    "fluidity": 8,
    "volume": LENGTH_DIGITS,
    "h": LENGTH_DIGITS,
    "R": LENGTH_DIGITS,
    "r": LENGTH_DIGITS,
    "apex_half_angle": ANGLE_DIGITS,
    "max_cone_angle": ANGLE_DIGITS,
    "cone_half_angle": ANGLE_DIGITS,
    "semi_major": ANGLE_DIGITS,
    "semi_minor": ANGLE_DIGITS,
    "angle": ANGLE_DIGITS,
    "hull_area": ANGLE_DIGITS,
    "mse": DEFAULT_DIGITS,
    "rmse": DEFAULT_DIGITS,
    "lag": DEFAULT_DIGITS,
}


def digits_for(name):
    return PRECISION.get(name, DEFAULT_DIGITS)


@singledispatch
def rounded(value, digits=DEFAULT_DIGITS):
    """Round floats anywhere inside a nested structure of builtins and numpy values."""
    return value


@rounded.register(float)
@rounded.register(np.floating)
def _(value, digits=DEFAULT_DIGITS):
    value = round(float(value), digits)
    # avoid "-0.0" in written files
    return 0.0 if value == 0 else value


@rounded.register(bool)
@rounded.register(np.bool_)
def _(value, digits=DEFAULT_DIGITS):
    return bool(value)


@rounded.register(int)
@rounded.register(np.integer)
def _(value, digits=DEFAULT_DIGITS):
    return int(value)


@rounded.register(np.ndarray)
def _(value, digits=DEFAULT_DIGITS):
    return [rounded(v, digits) for v in value.tolist()]


@rounded.register(list)
@rounded.register(tuple)
def _(value, digits=DEFAULT_DIGITS):
    return [rounded(v, digits) for v in value]


@rounded.register(dict)
def _(value, digits=DEFAULT_DIGITS):
    """Dictionary values are rounded with the precision registered for their key."""
    return {k: rounded(v, PRECISION.get(k, digits)) for k, v in value.items()}


def format_fixed(value, digits=DEFAULT_DIGITS):
    """Fixed decimal string; None and NaN become an empty field."""
    if value is None or (isinstance(value, (float, np.floating)) and np.isnan(value)):
        return ""
    text = f"{float(value):.{digits}f}"
    if float(text) == 0:
        text = text.lstrip("-")
    return text
