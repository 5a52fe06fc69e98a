# coding: utf-8
# Copyright (c) rcm_tracker developers
# Distributed under the terms of "New BSD License", see the LICENSE file.

"""
Smoothing and numerical time derivatives of sampled positions.

Quantized encoder counts make raw third differences explode, so positions are smoothed with a
centred moving average before differentiating with second-order central differences.
"""

import numpy as np

from rcm_tracker.kinematics.model import TipTrajectory
from rcm_tracker.utils.errors import InsufficientDataError, InvalidInputError

__author__ = "rcm_tracker developers"
__copyright__ = "Copyright 2026, rcm_tracker developers"
__version__ = "0.1"
__maintainer__ = "rcm_tracker developers"
__status__ = "development"
__date__ = "Oct 18, 2026"

UNIFORM_RTOL = 1e-6
ORDERS = (1, 2, 3)


def _check_window(window):
    if int(window) != window or window < 1 or window % 2 == 0:
        raise InvalidInputError(f"Smoothing window must be an odd integer >= 1, got {window}")
    return int(window)


def moving_average(values, window):
    """
    Centred moving average along the first axis.

    The window shrinks symmetrically towards both ends, so the output keeps the input length
    and affine signals pass unchanged.
    """
    window = _check_window(window)
    values = np.asarray(values, dtype=float)
    n = len(values)
    if window == 1 or n < 3:
        return values.copy()
    index = np.arange(n)
    half = np.minimum(np.minimum(index, n - 1 - index), window // 2)
    # subtracting the first sample keeps the running sums small
    base = values[0]
    sums = np.concatenate([np.zeros((1,) + values.shape[1:]), np.cumsum(values - base, axis=0)])
    counts = (2 * half + 1).reshape((-1,) + (1,) * (values.ndim - 1))
    return (sums[index + half + 1] - sums[index - half]) / counts + base


def sample_spacing(t):
    """Scalar step for uniformly sampled timestamps, otherwise the timestamps themselves."""
    t = np.asarray(t, dtype=float)
    if len(t) < 2:
        raise InsufficientDataError("At least two timestamps are needed to differentiate.")
    step = (t[-1] - t[0]) / (len(t) - 1)
    if np.allclose(np.diff(t), step, rtol=UNIFORM_RTOL, atol=0):
        return step
    return t


def derivative_series(t, values, max_order, window):
    """
    Derivatives of orders 1..max_order of `values` sampled at `t`, one gradient pass each.

    Args:
        t (numpy.ndarray): strictly increasing timestamps (n,).
        values (numpy.ndarray): samples (n,) or (n, k).
        max_order (int): highest derivative order.
        window (int): odd moving-average window applied once before differentiating.

    Returns:
        list: numpy arrays of the input's shape, first derivative first.
    """
    if max_order not in ORDERS:
        raise InvalidInputError(f"Derivative order must be one of {ORDERS}, got {max_order}")
    if len(t) < max_order + 1:
        raise InsufficientDataError(
            f"Derivative of order {max_order} needs at least {max_order + 1} samples, got {len(t)}"
        )
    spacing = sample_spacing(t)
    edge_order = 2 if len(t) >= 3 else 1
    current = moving_average(values, window)
    out = []
    for _ in range(max_order):
        current = np.gradient(current, spacing, axis=0, edge_order=edge_order)
        out.append(current)
    return out


def derivatives(traj: TipTrajectory, window=5, max_order=3):
    """Velocity, acceleration and jerk vectors (up to `max_order`) of a tip trajectory."""
    return derivative_series(traj.t, traj.xyz, max_order, window)


def differentiate(traj: TipTrajectory, order, cfg=None):
    """
    Time derivative of the given order of the tip position, shape (n, 3).

    Args:
        traj (TipTrajectory): positions in mm.
        order (int): 1, 2 or 3.
        cfg (MetricConfig): supplies the smoothing window; defaults when None.
    """
    window = 5 if cfg is None else cfg.smoothing_window
    return derivative_series(traj.t, traj.xyz, order, window)[-1]


def interior_slice(n, window):
    """Samples untouched by the truncated smoothing window and difference stencils."""
    trim = window // 2 + 3
    if n - 2 * trim >= 2:
        return slice(trim, n - trim)
    return slice(0, n)
