# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.landmarks.pose` module estimates the head pose of a frame by
fitting a 3D face template under weak perspective.

Rotations are parametrized by yaw, pitch and roll Euler angles, in degrees,
composed as ``R = Rz(roll) . Ry(yaw) . Rx(pitch)``. The roll is applied last,
in the image plane: rotating a frame by an angle adds that angle to its roll
and leaves its yaw and pitch unchanged.
"""

import math
from collections import namedtuple

import numpy as np
from scipy import linalg

from lmsynth.errors import DegenerateFrame, OutOfRange
from .frame import as_coords

MAX_ANGLE = 90.0


class PoseAngles(namedtuple("PoseAngles", ["yaw", "pitch", "roll"])):
    """Euler angles of a head pose, in degrees.

    :param yaw: rotation around the vertical axis.
    :param pitch: rotation around the horizontal axis.
    :param roll: in-plane rotation.
    :raises OutOfRange: if an angle is outside of ``[-90, 90]``.
    """
    __slots__ = ()

    def __new__(cls, yaw=0.0, pitch=0.0, roll=0.0):
        for name, value in (("yaw", yaw), ("pitch", pitch), ("roll", roll)):
            if not -MAX_ANGLE <= value <= MAX_ANGLE:
                raise OutOfRange(
                    "{0} should be in [-{1}, {1}], got {2}".format(
                        name, MAX_ANGLE, value))
        return super(PoseAngles, cls).__new__(
            cls, float(yaw), float(pitch), float(roll))

    def to_dict(self):
        """Returns the angles as a dict, as stored in the record files."""
        return {"yaw": self.yaw, "pitch": self.pitch, "roll": self.roll}


def rotation_matrix(pose):
    """Returns the ``3x3`` rotation matrix of a pose.

    :param pose: a :class:`PoseAngles`.
    """
    yaw, pitch, roll = (math.radians(angle) for angle in pose)

    cy, sy = math.cos(yaw), math.sin(yaw)
    cp, sp = math.cos(pitch), math.sin(pitch)
    cr, sr = math.cos(roll), math.sin(roll)

    rot_y = np.array([[cy, 0, sy], [0, 1, 0], [-sy, 0, cy]])
    rot_x = np.array([[1, 0, 0], [0, cp, -sp], [0, sp, cp]])
    rot_z = np.array([[cr, -sr, 0], [sr, cr, 0], [0, 0, 1]])

    return np.dot(rot_z, np.dot(rot_y, rot_x))


def euler_angles(rotation):
    """Inverse of :func:`rotation_matrix`.

    :param rotation: a ``3x3`` rotation matrix.
    :returns: a :class:`PoseAngles`.
    """
    yaw = math.asin(np.clip(-rotation[2, 0], -1.0, 1.0))
    pitch = math.atan2(rotation[2, 1], rotation[2, 2])
    roll = math.atan2(rotation[1, 0], rotation[0, 0])

    return PoseAngles(*(np.clip(math.degrees(angle), -MAX_ANGLE, MAX_ANGLE)
                        for angle in (yaw, pitch, roll)))


def estimate_pose(frame, template=None):
    """Estimates the head pose of a frame.

    The 98 points of the template are fitted to the frame with an affine
    weak-perspective camera ``x = M . X + t`` in the least-squares sense. The
    two rows of ``M`` are then replaced by the closest pair of orthonormal
    vectors, completed into a rotation matrix whose Euler angles are returned.

    :param frame: a :class:`~lmsynth.landmarks.frame.LandmarkFrame`.
    :param template: a :class:`~lmsynth.synth.template.FaceTemplate3D` (the
        default template if ``None``).
    :returns: a :class:`PoseAngles`.
    :raises DegenerateFrame: if all the points of the frame are coincident.
    """
    if template is None:
        # pylint: disable=cyclic-import
        from lmsynth.synth.template import default_template
        template = default_template()

    coords = as_coords(frame)
    centered = coords - coords.mean(axis=0)
    if centered.var(axis=0).sum() <= np.finfo(np.float64).tiny:
        raise DegenerateFrame("cannot estimate the pose of a degenerate frame")

    model = template.base - template.base.mean(axis=0)

    # Solve model . A = centered, with A = M.T of shape (3, 2)
    solution, _, _, _ = linalg.lstsq(model, centered)
    affine = solution.T

    u, _, vt = linalg.svd(affine, full_matrices=False)
    rows = np.dot(u, vt)
    rotation = np.vstack((rows, np.cross(rows[0], rows[1])))

    return euler_angles(rotation)
