# coding: utf-8
# Copyright (c) rcm_tracker developers
# Distributed under the terms of "New BSD License", see the LICENSE file.

"""Boundary of the explored gimbal-angle workspace in the (phi1, phi2) plane."""

import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from pyiron_base import state
from scipy.spatial import ConvexHull, QhullError

from rcm_tracker.kinematics.model import DEFAULT_CONE_HALF_ANGLE, JointSeries
from rcm_tracker.utils.errors import InsufficientDataError

__author__ = "rcm_tracker developers"
__copyright__ = "Copyright 2026, rcm_tracker developers"
__version__ = "0.1"
__maintainer__ = "rcm_tracker developers"
__status__ = "development"
__date__ = "Oct 18, 2026"

MIN_BOUNDARY_SAMPLES = 100
HULL_EXTENT_TOLERANCE = 0.05
CONE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class EllipseFit:
    """Ellipse in the (phi1, phi2) plane, angles in degrees; `angle` orients the major axis."""

    center: tuple
    semi_major: float
    semi_minor: float
    angle: float

    def to_dict(self):
        return {
            "center": list(self.center),
            "semi_major": self.semi_major,
            "semi_minor": self.semi_minor,
            "angle": self.angle,
        }


@dataclass(frozen=True)
class WorkspaceBoundary:
    hull_vertices: np.ndarray
    hull_area: float
    ellipse: Optional[EllipseFit]
    max_cone_angle: float
    cone_half_angle: float
    violation: bool
    notes: list = field(default_factory=list)

    @property
    def degenerate(self):
        return self.hull_area == 0

    def to_dict(self):
        return {
            "hull_vertices": self.hull_vertices.tolist(),
            "hull_area": self.hull_area,
            "ellipse": None if self.ellipse is None else self.ellipse.to_dict(),
            "max_cone_angle": self.max_cone_angle,
            "cone_half_angle": self.cone_half_angle,
            "violation": self.violation,
            "notes": list(self.notes),
        }

    def summary(self):
        """The report block: everything but the hull vertices."""
        out = self.to_dict()
        del out["hull_vertices"]
        return out


def fit_ellipse(points):
    """
    Algebraic least-squares conic a x^2 + b xy + c y^2 + d x + e y + f = 0 through `points`.

    Returns:
        EllipseFit/None: None when fewer than five points are given or the conic is no ellipse.
    """
    points = np.asarray(points, dtype=float)
    if len(points) < 5:
        return None
    # centre and scale for conditioning
    shift = points.mean(axis=0)
    scale = np.abs(points - shift).max()
    if scale == 0:
        return None
    x, y = ((points - shift) / scale).T
    design = np.column_stack([x * x, x * y, y * y, x, y, np.ones_like(x)])
    a, b, c, d, e, f = np.linalg.svd(design)[2][-1]
    if b * b - 4 * a * c >= 0:
        return None
    x0, y0 = np.linalg.solve([[2 * a, b], [b, 2 * c]], [-d, -e])
    value = a * x0 * x0 + b * x0 * y0 + c * y0 * y0 + d * x0 + e * y0 + f
    eigenvalues, eigenvectors = np.linalg.eigh([[a, b / 2], [b / 2, c]])
    squares = -value / eigenvalues
    if np.any(squares <= 0):
        return None
    axes = np.sqrt(squares) * scale
    major = int(np.argmax(axes))
    direction = eigenvectors[:, major]
    return EllipseFit(
        center=(float(x0 * scale + shift[0]), float(y0 * scale + shift[1])),
        semi_major=float(axes[major]),
        semi_minor=float(axes[1 - major]),
        angle=float(np.degrees(np.arctan2(direction[1], direction[0])) % 180.0),
    )


def _hull(points):
    unique = np.unique(points, axis=0)
    if len(unique) < 3 or np.linalg.matrix_rank(unique - unique.mean(axis=0), tol=1e-9) < 2:
        return unique, 0.0
    try:
        hull = ConvexHull(unique)
    except QhullError:
        return unique, 0.0
    # the area of a 2-D hull is stored as its volume
    return unique[hull.vertices], float(hull.volume)


def _axis_extent(vertices, ellipse, angle):
    direction = np.array([np.cos(np.radians(angle)), np.sin(np.radians(angle))])
    projection = (vertices - np.array(ellipse.center)) @ direction
    return float(np.abs(projection).max())


def workspace_boundary(joints, cone_half_angle=DEFAULT_CONE_HALF_ANGLE, min_samples=MIN_BOUNDARY_SAMPLES):
    """
    Convex hull and best-fit ellipse of the visited (phi1, phi2) angles.

    Args:
        joints (JointSeries/list): joint states.
        cone_half_angle (float): workspace cone half-angle in degrees.
        min_samples (int): minimal number of samples.

    Returns:
        WorkspaceBoundary
    """
    if not isinstance(joints, JointSeries):
        joints = JointSeries.from_states(list(joints))
    if len(joints) < min_samples:
        raise InsufficientDataError(f"Workspace boundary needs >= {min_samples} samples, got {len(joints)}")
    points = np.column_stack([joints.phi1, joints.phi2])
    max_cone_angle = float(np.max(joints.cone_angle))
    vertices, area = _hull(points)
    notes = []
    ellipse = None
    if area == 0:
        notes.append("degenerate hull: the visited angles do not span an area")
    else:
        ellipse = fit_ellipse(vertices)
        if ellipse is None:
            notes.append("no ellipse fits the hull vertices")
        else:
            for name, angle in (("semi_major", ellipse.angle), ("semi_minor", ellipse.angle + 90.0)):
                extent = _axis_extent(vertices, ellipse, angle)
                if getattr(ellipse, name) > (1 + HULL_EXTENT_TOLERANCE) * extent:
                    message = f"Fitted ellipse {name} {getattr(ellipse, name):.3f} deg exceeds the hull extent {extent:.3f} deg"
                    warnings.warn(message)
                    notes.append(message)
    violation = max_cone_angle > cone_half_angle + CONE_TOLERANCE
    if violation:
        state.logger.warning(
            f"Cone angle {max_cone_angle:.3f} deg exceeds the {cone_half_angle} deg half-angle"
        )
    return WorkspaceBoundary(
        hull_vertices=vertices,
        hull_area=area,
        ellipse=ellipse,
        max_cone_angle=max_cone_angle,
        cone_half_angle=float(cone_half_angle),
        violation=violation,
        notes=notes,
    )
