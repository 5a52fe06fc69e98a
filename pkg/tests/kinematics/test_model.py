# coding: utf-8
# Copyright (c) rcm_tracker developers
# Distributed under the terms of "New BSD License", see the LICENSE file.

import unittest

import numpy as np

from rcm_tracker.kinematics.model import (
    LITERAL,
    JointSeries,
    JointState,
    TipTrajectory,
    forward_kinematics,
    forward_kinematics_series,
    joint_angles_from_vector,
    joint_angles_from_vectors,
    reconstruct_trajectory,
    tool_pose,
)
from rcm_tracker.kinematics.transform import chain_positions
from rcm_tracker.utils.errors import DegenerateInputError, InvalidInputError, OrderingError
from tests.trajectories import random_joint_series


class TestJointState(unittest.TestCase):

    def test_validation(self):
        with self.assertRaises(InvalidInputError):
            JointState(0.0, 0.0, 0.0, -1.0)
        with self.assertRaises(InvalidInputError):
            JointState(float("nan"), 0.0, 0.0, 1.0)
        with self.assertRaises(InvalidInputError):
            JointState(0.0, 0.0, 0.0, 1.0, t=-0.1)
        self.assertIsNone(JointState(0.0, 0.0, None, 1.0).phi3)

    def test_cone(self):
        q = JointState(9.0, 12.0, 0.0, 50.0)
        self.assertAlmostEqual(q.cone_angle, 15.0)
        self.assertFalse(q.in_workspace())
        self.assertTrue(q.in_workspace(cone_half_angle=15.0))


class TestForwardKinematics(unittest.TestCase):

    def test_examples(self):
        with self.subTest("straight"):
            tip = forward_kinematics(JointState(0.0, 0.0, 0.0, 100.0))
            self.assertTrue(np.allclose(tip.vector, [0.0, 0.0, 100.0], atol=1e-12))
        with self.subTest("phi2"):
            tip = forward_kinematics(JointState(0.0, 13.0, 0.0, 100.0))
            self.assertAlmostEqual(tip.x, 22.495, places=3)
            self.assertAlmostEqual(tip.y, 0.0, places=12)
            self.assertAlmostEqual(tip.z, 97.437, places=3)
        with self.subTest("phi1"):
            tip = forward_kinematics(JointState(10.0, 0.0, 0.0, 50.0))
            self.assertAlmostEqual(tip.y, -50.0 * np.sin(np.radians(10.0)), places=12)
        with self.subTest("phi3 does not move the tip"):
            a = forward_kinematics(JointState(5.0, -3.0, 0.0, 70.0)).vector
            b = forward_kinematics(JointState(5.0, -3.0, 120.0, 70.0)).vector
            self.assertTrue(np.array_equal(a, b))

    def test_matches_matrix_chain(self):
        joints = random_joint_series(n=100000, seed=1)
        closed_form = forward_kinematics_series(joints).xyz
        chained = chain_positions(joints.phi1, joints.phi2, joints.phi3.filled(0.0), joints.d)
        self.assertLess(np.max(np.abs(closed_form - chained)), 1e-9)

    def test_tool_pose(self):
        q = JointState(7.0, -4.0, 33.0, 64.0)
        pose = tool_pose(q)
        self.assertTrue(np.allclose(pose.translation, forward_kinematics(q).vector, atol=1e-12))
        # tool axis is the third column of the orientation
        self.assertTrue(np.allclose(pose.rotation[:, 2] * q.d, pose.translation, atol=1e-12))
        self.assertTrue(tool_pose(JointState(7.0, -4.0, None, 64.0)).allclose(tool_pose(JointState(7.0, -4.0, 0.0, 64.0))))


class TestInverseKinematics(unittest.TestCase):

    def test_round_trip_reconciled(self):
        joints = random_joint_series(n=10000, seed=2)
        xyz = forward_kinematics_series(joints).xyz
        phi1, phi2, _ = joint_angles_from_vectors(xyz)
        self.assertLess(np.max(np.abs(phi1 - joints.phi1)), 1e-6)
        self.assertLess(np.max(np.abs(phi2 - joints.phi2)), 1e-6)
        self.assertLess(np.max(np.abs(np.linalg.norm(xyz, axis=1) - joints.d)), 1e-9)

    def test_literal_convention(self):
        with self.subTest("exact for phi1 = 0"):
            v = forward_kinematics(JointState(0.0, 9.0, 0.0, 80.0)).vector
            self.assertAlmostEqual(joint_angles_from_vector(v, convention=LITERAL).phi2, 9.0, places=9)
        with self.subTest("sign of phi1"):
            v = forward_kinematics(JointState(6.0, 0.0, 0.0, 80.0)).vector
            self.assertAlmostEqual(joint_angles_from_vector(v, convention=LITERAL).phi1, -6.0, places=9)
            self.assertAlmostEqual(joint_angles_from_vector(v).phi1, 6.0, places=9)

    def test_phi3(self):
        self.assertIsNone(joint_angles_from_vector([0.0, 0.0, 10.0]).phi3)
        self.assertAlmostEqual(joint_angles_from_vector([1.0, 1.0, 10.0]).phi3, 45.0)

    def test_errors(self):
        with self.assertRaises(DegenerateInputError):
            joint_angles_from_vector([0.0, 0.0, 0.0])
        with self.assertRaises(InvalidInputError):
            joint_angles_from_vector([0.0, 0.0, 1.0], convention="other")


class TestSeries(unittest.TestCase):

    def test_joint_series(self):
        joints = JointSeries(t=[0.0, 0.01, 0.02], phi1=[1, 2, 3], phi2=[0, 0, 0], phi3=[5.0, np.nan, 7.0], d=[10, 11, 12])
        self.assertEqual(len(joints), 3)
        self.assertIsNone(joints[1].phi3)
        self.assertEqual(joints[2].phi3, 7.0)
        self.assertEqual(len(joints[1:]), 2)
        self.assertEqual([q.d for q in joints], [10.0, 11.0, 12.0])
        frame = joints.to_frame()
        self.assertTrue(np.isnan(frame["phi3"][1]))
        self.assertTrue(np.array_equal(JointSeries.from_frame(frame).phi3.mask, [False, True, False]))

    def test_joint_series_validation(self):
        with self.assertRaises(OrderingError):
            JointSeries(t=[0.0, 0.0], phi1=[0, 0], phi2=[0, 0], phi3=[0, 0], d=[1, 1])
        with self.assertRaises(InvalidInputError):
            JointSeries(t=[0.0, 1.0], phi1=[0], phi2=[0, 0], phi3=[0, 0], d=[1, 1])
        with self.assertRaises(InvalidInputError):
            JointSeries(t=[0.0, 1.0], phi1=[0, 0], phi2=[0, 0], phi3=[0, 0], d=[1, -1])

    def test_from_states(self):
        states = [JointState(0.0, 0.0, None, 10.0, t=0.0), JointState(1.0, 0.0, 3.0, 10.0, t=0.5)]
        joints = JointSeries.from_states(states)
        self.assertTrue(np.array_equal(joints.phi3.mask, [True, False]))

    def test_reconstruct_trajectory(self):
        states = [JointState(0.0, 0.0, 0.0, 10.0, t=0.0), JointState(0.0, 0.0, 0.0, 20.0, t=0.1)]
        trajectory = reconstruct_trajectory(states)
        self.assertIsInstance(trajectory, TipTrajectory)
        self.assertTrue(np.allclose(trajectory.xyz[:, 2], [10.0, 20.0]))
        with self.assertRaises(OrderingError):
            reconstruct_trajectory(states[::-1])

    def test_tip_trajectory(self):
        trajectory = TipTrajectory([0.0, 1.0, 3.0], [[0, 0, 0], [1, 0, 0], [1, 1, 0]])
        self.assertEqual(trajectory[1].x, 1.0)
        self.assertTrue(np.array_equal(trajectory.reversed().t, [0.0, 2.0, 3.0]))
        self.assertTrue(np.array_equal(trajectory.reversed().xyz[0], [1.0, 1.0, 0.0]))
        self.assertTrue(np.array_equal(trajectory.shifted(2.0).t, [2.0, 3.0, 5.0]))
        self.assertTrue(np.array_equal(trajectory.scaled(2.0).xyz[2], [2.0, 2.0, 0.0]))
        self.assertEqual(len(trajectory.samples), 3)
        with self.assertRaises(InvalidInputError):
            TipTrajectory([0.0, 1.0], [[0, 0, 0]])


if __name__ == "__main__":
    unittest.main()
