# coding: utf-8
# Copyright (c) rcm_tracker developers
# Distributed under the terms of "New BSD License", see the LICENSE file.

"""
Joint space and tip space of the 4-DoF (3R1T) remote-center-of-motion device.

All public angles are in degrees and lengths in mm; computations run in radians.
"""

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np
import pandas

from rcm_tracker.kinematics.transform import compose, elementary_transform
from rcm_tracker.utils.errors import DegenerateInputError, InvalidInputError, OrderingError

__author__ = "rcm_tracker developers"
__copyright__ = "Copyright 2026, rcm_tracker developers"
__version__ = "0.1"
__maintainer__ = "rcm_tracker developers"
__status__ = "development"
__date__ = "Oct 18, 2026"

RECONCILED = "reconciled"
LITERAL = "literal"
CONVENTIONS = (RECONCILED, LITERAL)
DEFAULT_CONE_HALF_ANGLE = 13.0


@dataclass(frozen=True)
class JointState:
    """
    The joint vector q = (phi1, phi2, phi3, d) at time t.

    Args:
        phi1 (float): rotation about X in degrees.
        phi2 (float): rotation about Y in degrees.
        phi3 (float/None): self-rotation about the tool axis in degrees; None when undefined.
        d (float): insertion depth along the tool axis in mm, never negative.
        t (float): time in seconds.
    """

    phi1: float
    phi2: float
    phi3: Optional[float]
    d: float
    t: float = 0.0

    def __post_init__(self):
        values = [self.phi1, self.phi2, self.d, self.t]
        if self.phi3 is not None:
            values.append(self.phi3)
        if not np.all(np.isfinite(values)):
            raise InvalidInputError(f"Non-finite joint state {self}")
        if self.d < 0:
            raise InvalidInputError(f"Insertion depth must be >= 0, got {self.d}")
        if self.t < 0:
            raise InvalidInputError(f"Time must be >= 0, got {self.t}")

    @property
    def cone_angle(self):
        """Angle between the tool axis and the trocar axis, sqrt(phi1^2 + phi2^2), in degrees."""
        return float(np.hypot(self.phi1, self.phi2))

    def in_workspace(self, cone_half_angle=DEFAULT_CONE_HALF_ANGLE):
        return self.cone_angle <= cone_half_angle


@dataclass(frozen=True)
class TipPosition:
    x: float
    y: float
    z: float
    t: float = 0.0

    @property
    def vector(self):
        return np.array([self.x, self.y, self.z])


class AngleTriple(NamedTuple):
    phi1: float
    phi2: float
    phi3: Optional[float]


def _check_increasing(t, what):
    if len(t) > 1 and not np.all(np.diff(t) > 0):
        raise OrderingError(f"{what} timestamps must be strictly increasing.")


def _readonly(array):
    array.setflags(write=False)
    return array


class JointSeries:
    """
    Time-ordered joint states stored column-wise.

    `phi3` is a numpy masked array; masked entries are undefined self-rotations.
    Indexing and iteration yield :class:`JointState` objects.
    """

    def __init__(self, t, phi1, phi2, phi3, d):
        t, phi1, phi2, d = (np.array(v, dtype=float).reshape(-1) for v in (t, phi1, phi2, d))
        phi3 = np.ma.array(phi3, dtype=float).reshape(-1)
        values = phi3.filled(0.0)
        phi3 = np.ma.array(
            np.where(np.isfinite(values), values, 0.0),
            mask=np.ma.getmaskarray(phi3) | ~np.isfinite(values),
        )
        if not len(t) == len(phi1) == len(phi2) == len(phi3) == len(d):
            raise InvalidInputError("All joint columns must have the same length.")
        if not all(np.all(np.isfinite(v)) for v in (t, phi1, phi2, d)):
            raise InvalidInputError("Joint series contains non-finite values.")
        if np.any(d < 0):
            raise InvalidInputError("Insertion depth must be >= 0.")
        if np.any(t < 0):
            raise InvalidInputError("Time must be >= 0.")
        _check_increasing(t, "Joint series")
        self._t = _readonly(t)
        self._phi1 = _readonly(phi1)
        self._phi2 = _readonly(phi2)
        self._phi3 = phi3
        self._d = _readonly(d)

    @classmethod
    def from_states(cls, states: Sequence[JointState]):
        states = list(states)
        phi3 = np.ma.array(
            [0.0 if s.phi3 is None else s.phi3 for s in states],
            mask=[s.phi3 is None for s in states],
        )
        return cls(
            t=[s.t for s in states],
            phi1=[s.phi1 for s in states],
            phi2=[s.phi2 for s in states],
            phi3=phi3,
            d=[s.d for s in states],
        )

    @classmethod
    def from_frame(cls, frame: pandas.DataFrame):
        return cls(
            t=frame["t"].to_numpy(dtype=float),
            phi1=frame["phi1"].to_numpy(dtype=float),
            phi2=frame["phi2"].to_numpy(dtype=float),
            phi3=frame["phi3"].to_numpy(dtype=float, na_value=np.nan),
            d=frame["d"].to_numpy(dtype=float),
        )

    @property
    def t(self):
        return self._t

    @property
    def phi1(self):
        return self._phi1

    @property
    def phi2(self):
        return self._phi2

    @property
    def phi3(self):
        return self._phi3.copy()

    @property
    def d(self):
        return self._d

    @property
    def cone_angle(self):
        return np.hypot(self._phi1, self._phi2)

    def __len__(self):
        return len(self._t)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return JointSeries(
                self._t[item], self._phi1[item], self._phi2[item], self._phi3[item], self._d[item]
            )
        phi3 = self._phi3[item]
        return JointState(
            phi1=float(self._phi1[item]),
            phi2=float(self._phi2[item]),
            phi3=None if phi3 is np.ma.masked else float(phi3),
            d=float(self._d[item]),
            t=float(self._t[item]),
        )

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def to_frame(self):
        """pandas.DataFrame with columns t, phi1, phi2, phi3, d; undefined phi3 becomes NaN."""
        return pandas.DataFrame(
            {
                "t": self._t,
                "phi1": self._phi1,
                "phi2": self._phi2,
                "phi3": self._phi3.filled(np.nan),
                "d": self._d,
            }
        )

    def __repr__(self):
        return f"JointSeries(n={len(self)})"


class TipTrajectory:
    """Time-ordered tip positions, `t` of shape (n,) and `xyz` of shape (n, 3) in mm."""

    def __init__(self, t, xyz):
        t = np.array(t, dtype=float).reshape(-1)
        xyz = np.array(xyz, dtype=float).reshape(-1, 3)
        if len(t) != len(xyz):
            raise InvalidInputError("Timestamps and positions differ in length.")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(xyz))):
            raise InvalidInputError("Trajectory contains non-finite values.")
        _check_increasing(t, "Trajectory")
        self._t = _readonly(t)
        self._xyz = _readonly(xyz)

    @classmethod
    def from_positions(cls, positions: Sequence[TipPosition]):
        positions = list(positions)
        return cls([p.t for p in positions], [[p.x, p.y, p.z] for p in positions])

    @property
    def t(self):
        return self._t

    @property
    def xyz(self):
        return self._xyz

    @property
    def samples(self):
        return [self[i] for i in range(len(self))]

    def __len__(self):
        return len(self._t)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return TipTrajectory(self._t[item], self._xyz[item])
        x, y, z = self._xyz[item]
        return TipPosition(float(x), float(y), float(z), float(self._t[item]))

    def scaled(self, factor):
        return TipTrajectory(self._t, self._xyz * factor)

    def shifted(self, dt):
        return TipTrajectory(self._t + dt, self._xyz)

    def reversed(self):
        """The same path travelled backwards over the same time span."""
        return TipTrajectory(self._t[0] + self._t[-1] - self._t[::-1], self._xyz[::-1])

    def to_frame(self):
        return pandas.DataFrame(
            {"t": self._t, "x": self._xyz[:, 0], "y": self._xyz[:, 1], "z": self._xyz[:, 2]}
        )

    def __repr__(self):
        return f"TipTrajectory(n={len(self)})"


def _tip_coordinates(phi1, phi2, d):
    phi1, phi2 = np.radians(phi1), np.radians(phi2)
    return (
        d * np.sin(phi2),
        -d * np.sin(phi1) * np.cos(phi2),
        d * np.cos(phi1) * np.cos(phi2),
    )


def forward_kinematics(q: JointState):
    """Closed-form tip position; phi3 does not enter."""
    x, y, z = _tip_coordinates(q.phi1, q.phi2, q.d)
    return TipPosition(float(x), float(y), float(z), q.t)


def tool_pose(q: JointState):
    """Full [0T4] transform of the tool; the tip is its translation."""
    phi3 = 0.0 if q.phi3 is None else q.phi3
    return compose(
        [
            elementary_transform("rot_x", q.phi1),
            elementary_transform("rot_y", q.phi2),
            elementary_transform("rot_z", phi3),
            elementary_transform("trans_z", q.d),
        ]
    )


def forward_kinematics_series(joints: JointSeries):
    x, y, z = _tip_coordinates(joints.phi1, joints.phi2, joints.d)
    return TipTrajectory(joints.t, np.column_stack([x, y, z]))


def _check_convention(convention):
    if convention not in CONVENTIONS:
        raise InvalidInputError(f"Unknown convention '{convention}'; expected one of {CONVENTIONS}")


def joint_angles_from_vectors(vectors, convention=RECONCILED):
    """
    Vectorised angle extraction for an (n, 3) array of tool vectors.

    Returns:
        tuple: phi1, phi2 (degree arrays) and phi3 as a masked array, masked where
        v_x = v_y = 0.
    """
    _check_convention(convention)
    vectors = np.asarray(vectors, dtype=float).reshape(-1, 3)
    norm = np.linalg.norm(vectors, axis=1)
    if np.any(norm == 0):
        raise DegenerateInputError("Cannot extract angles from a zero vector.")
    vx, vy, vz = vectors.T
    if convention == LITERAL:
        phi1 = np.arctan2(vy, vz)
        phi2 = np.arctan2(vx, vz)
    else:
        phi1 = np.arctan2(-vy, vz)
        phi2 = np.arcsin(np.clip(vx / norm, -1.0, 1.0))
    undefined = (vx == 0) & (vy == 0)
    phi3 = np.ma.array(np.degrees(np.arctan2(vy, vx)), mask=undefined)
    return np.degrees(phi1), np.degrees(phi2), phi3


def joint_angles_from_vector(v, convention=RECONCILED):
    """
    Recover (phi1, phi2, phi3) in degrees from a tool vector.

    The "literal" convention evaluates phi1 = atan2(v_y, v_z) and phi2 = atan2(v_x, v_z) as
    printed; it is exact only for phi1 = 0. The "reconciled" convention inverts
    forward_kinematics exactly: phi2 = asin(v_x/|v|), phi1 = atan2(-v_y, v_z).
    phi3 = atan2(v_y, v_x) in both, None when v_x = v_y = 0.
    """
    phi1, phi2, phi3 = joint_angles_from_vectors([v], convention=convention)
    return AngleTriple(
        float(phi1[0]),
        float(phi2[0]),
        None if phi3[0] is np.ma.masked else float(phi3[0]),
    )


def reconstruct_trajectory(joints: Union[JointSeries, Sequence[JointState]]):
    """Elementwise forward kinematics of a joint sequence."""
    if not isinstance(joints, JointSeries):
        joints = list(joints)
        _check_increasing(np.array([q.t for q in joints]), "Joint")
        joints = JointSeries.from_states(joints)
    return forward_kinematics_series(joints)
