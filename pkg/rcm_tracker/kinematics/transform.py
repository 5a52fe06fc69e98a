# coding: utf-8
# Copyright (c) rcm_tracker developers
# Distributed under the terms of "New BSD License", see the LICENSE file.

"""Rigid transforms and the elementary blocks of the 3R1T remote-center-of-motion chain."""

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.linalg import polar

from rcm_tracker.utils.errors import InvalidInputError

__author__ = "rcm_tracker developers"
__copyright__ = "Copyright 2026, rcm_tracker developers"
__version__ = "0.1"
__maintainer__ = "rcm_tracker developers"
__status__ = "development"
__date__ = "Oct 18, 2026"

ORTHONORMAL_TOLERANCE = 1e-9
REORTHONORMALIZE_EVERY = 50

ELEMENTARY_KINDS = ("rot_x", "rot_y", "rot_z", "trans_z")


def _orthonormalize(rotation):
    unitary, _ = polar(rotation)
    return unitary


@dataclass(frozen=True, eq=False)
class Transform:
    """
    Homogeneous rigid transform with a 3x3 rotation and a translation in mm.

    Instances are immutable. Composition keeps count of the products since the last
    re-orthonormalization and projects the rotation back onto SO(3) every
    `REORTHONORMALIZE_EVERY` compositions.

    Args:
        rotation: 3x3 orthonormal matrix with determinant +1.
        translation: 3-vector in mm.
    """

    rotation: np.ndarray
    translation: np.ndarray
    compositions: int = field(default=0, compare=False)

    def __post_init__(self):
        rotation = np.array(self.rotation, dtype=float)
        translation = np.array(self.translation, dtype=float).reshape(-1)
        if rotation.shape != (3, 3) or translation.shape != (3,):
            raise InvalidInputError(
                f"Expected a 3x3 rotation and a 3-vector, got {rotation.shape} and {translation.shape}"
            )
        if not (np.all(np.isfinite(rotation)) and np.all(np.isfinite(translation))):
            raise InvalidInputError("Transform entries must be finite.")
        if not is_rotation(rotation):
            raise InvalidInputError("Rotation matrix is not orthonormal with det +1.")
        rotation.setflags(write=False)
        translation.setflags(write=False)
        object.__setattr__(self, "rotation", rotation)
        object.__setattr__(self, "translation", translation)

    @classmethod
    def identity(cls):
        return cls(np.eye(3), np.zeros(3))

    @classmethod
    def from_matrix(cls, matrix):
        matrix = np.asarray(matrix, dtype=float)
        if matrix.shape != (4, 4):
            raise InvalidInputError(f"Expected a 4x4 matrix, got {matrix.shape}")
        return cls(matrix[:3, :3], matrix[:3, 3])

    @property
    def matrix(self):
        """4x4 homogeneous matrix."""
        out = np.eye(4)
        out[:3, :3] = self.rotation
        out[:3, 3] = self.translation
        return out

    def inverse(self):
        rotation_t = self.rotation.T
        return Transform(rotation_t, -rotation_t @ self.translation)

    def apply(self, points):
        """Map a point (3,) or an array of points (n, 3)."""
        points = np.asarray(points, dtype=float)
        return points @ self.rotation.T + self.translation

    def apply_vector(self, vectors):
        """Rotate free vectors (3,) or (n, 3); the translation does not act on them."""
        return np.asarray(vectors, dtype=float) @ self.rotation.T

    def __matmul__(self, other):
        if not isinstance(other, Transform):
            return NotImplemented
        rotation = self.rotation @ other.rotation
        translation = self.rotation @ other.translation + self.translation
        compositions = self.compositions + other.compositions + 1
        if compositions >= REORTHONORMALIZE_EVERY:
            rotation = _orthonormalize(rotation)
            compositions = 0
        return Transform(rotation, translation, compositions)

    def allclose(self, other, atol=1e-9):
        return np.allclose(self.rotation, other.rotation, atol=atol, rtol=0) and np.allclose(
            self.translation, other.translation, atol=atol, rtol=0
        )

    def __repr__(self):
        return f"Transform(rotation={self.rotation.tolist()}, translation={self.translation.tolist()})"


def is_rotation(matrix, atol=ORTHONORMAL_TOLERANCE):
    matrix = np.asarray(matrix, dtype=float)
    return bool(
        np.allclose(matrix.T @ matrix, np.eye(3), atol=atol, rtol=0)
        and abs(np.linalg.det(matrix) - 1.0) <= atol
    )


def _rotation_about(axis, angle):
    c, s = np.cos(angle), np.sin(angle)
    if axis == "x":
        return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])
    if axis == "y":
        return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def elementary_transform(kind, value):
    """
    One block of the RCM chain.

    Args:
        kind (str): "rot_x", "rot_y", "rot_z" (value in degrees) or "trans_z" (value in mm).
        value (float): angle or length.

    Returns:
        Transform
    """
    if kind not in ELEMENTARY_KINDS:
        raise InvalidInputError(f"Unknown transform kind '{kind}'; expected one of {ELEMENTARY_KINDS}")
    if not np.isfinite(value):
        raise InvalidInputError(f"Non-finite value {value} for {kind}")
    if kind == "trans_z":
        return Transform(np.eye(3), np.array([0.0, 0.0, float(value)]))
    return Transform(_rotation_about(kind[-1], np.radians(value)), np.zeros(3))


def compose(chain: Sequence[Transform]):
    """Product of the transforms in listed order."""
    if len(chain) == 0:
        raise InvalidInputError("Cannot compose an empty chain.")
    result = chain[0]
    for transform in chain[1:]:
        result = result @ transform
    return result


def _batched_rotations(axis, angles):
    c, s = np.cos(angles), np.sin(angles)
    zeros, ones = np.zeros_like(angles), np.ones_like(angles)
    if axis == "x":
        rows = [[ones, zeros, zeros], [zeros, c, -s], [zeros, s, c]]
    elif axis == "y":
        rows = [[c, zeros, s], [zeros, ones, zeros], [-s, zeros, c]]
    else:
        rows = [[c, -s, zeros], [s, c, zeros], [zeros, zeros, ones]]
    out = np.zeros(angles.shape + (4, 4))
    out[..., :3, :3] = np.moveaxis(np.array(rows), (0, 1), (-2, -1))
    out[..., 3, 3] = 1.0
    return out


def chain_matrices(phi1, phi2, phi3, d):
    """
    Batched [0T4] = [0T1][1T2][2T3][3T4] as explicit 4x4 matrix products.

    Args:
        phi1, phi2, phi3: arrays of angles in degrees.
        d: array of insertion depths in mm.

    Returns:
        numpy.ndarray: shape (n, 4, 4)
    """
    phi1, phi2, phi3, d = (np.atleast_1d(np.asarray(v, dtype=float)) for v in (phi1, phi2, phi3, d))
    translation = np.zeros(d.shape + (4, 4))
    translation[..., np.arange(4), np.arange(4)] = 1.0
    translation[..., 2, 3] = d
    return (
        _batched_rotations("x", np.radians(phi1))
        @ _batched_rotations("y", np.radians(phi2))
        @ _batched_rotations("z", np.radians(phi3))
        @ translation
    )


def chain_positions(phi1, phi2, phi3, d):
    """Tip positions (n, 3) from the batched matrix chain applied to the origin."""
    return chain_matrices(phi1, phi2, phi3, d)[..., :3, 3]
