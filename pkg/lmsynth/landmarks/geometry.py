# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.landmarks.geometry` module implements the least-squares
similarity alignment of landmark frames.
"""

import math

import numpy as np

from lmsynth.errors import DegenerateFrame, OutOfRange
from .frame import LandmarkFrame, as_coords


class SimilarityTransform(object):
    """A 2D similarity transform ``p -> scale * R(rotation) * p +
    translation``.

    :param scale: the scale factor.
    :type scale: float
    :param rotation: the rotation angle, in radians.
    :type rotation: float
    :param translation: the translation ``(tx, ty)``.
    :raises OutOfRange: if ``scale`` is not strictly positive.
    """
    __slots__ = ("_scale", "_rotation", "_translation")

    def __init__(self, scale=1.0, rotation=0.0, translation=(0.0, 0.0)):
        if not scale > 0:
            raise OutOfRange(
                "the scale should be strictly positive, got {}".format(scale))
        self._scale = float(scale)
        self._rotation = float(rotation)
        self._translation = (float(translation[0]), float(translation[1]))

    def __repr__(self):
        return ("SimilarityTransform(scale={:.6g}, rotation={:.6g}, "
                "translation=({:.6g}, {:.6g}))").format(
                    self._scale, self._rotation, *self._translation)

    @property
    def scale(self):
        """The scale factor."""
        return self._scale

    @property
    def rotation(self):
        """The rotation angle, in radians."""
        return self._rotation

    @property
    def translation(self):
        """The translation, as a tuple ``(tx, ty)``."""
        return self._translation

    @property
    def linear(self):
        """The ``2x2`` matrix ``scale * R(rotation)``."""
        cos = math.cos(self._rotation)
        sin = math.sin(self._rotation)
        return self._scale * np.array([[cos, -sin], [sin, cos]])

    def inverse(self):
        """Returns the inverse transform."""
        return inverse_transform(self)


def fit_similarity(src, dst):
    """Returns the similarity transform minimizing
    ``sum_i |s * R * src_i + t - dst_i|^2``.

    The closed-form solution is computed with the SVD of the cross-covariance
    of the centered point sets, excluding reflections.

    :param src: the source frame.
    :type src: :class:`~lmsynth.landmarks.frame.LandmarkFrame`
    :param dst: the destination frame.
    :type dst: :class:`~lmsynth.landmarks.frame.LandmarkFrame`
    :returns: a :class:`SimilarityTransform`.
    :raises DegenerateFrame: if all the points of ``src`` (or of ``dst``) are
        coincident.
    """
    src = as_coords(src)
    dst = as_coords(dst)
    n = src.shape[0]

    src_mean = src.mean(axis=0)
    dst_mean = dst.mean(axis=0)
    src_demean = src - src_mean
    dst_demean = dst - dst_mean

    src_var = src_demean.var(axis=0).sum()
    if src_var <= np.finfo(np.float64).tiny:
        raise DegenerateFrame("the source frame has zero spatial variance")

    cross = np.dot(dst_demean.T, src_demean) / n
    u, s, vt = np.linalg.svd(cross)

    d = np.ones(2)
    if np.linalg.det(u) * np.linalg.det(vt) < 0:
        d[1] = -1

    rotation = np.dot(u, np.dot(np.diag(d), vt))
    scale = np.dot(s, d) / src_var
    if not scale > 0:
        raise DegenerateFrame(
            "the destination frame has zero spatial variance")

    translation = dst_mean - scale * np.dot(rotation, src_mean)
    angle = math.atan2(rotation[1, 0], rotation[0, 0])

    return SimilarityTransform(scale, angle, translation)


def apply_transform(frame, transform):
    """Maps each point ``p`` of a frame to ``s * R * p + t``.

    :param frame: a :class:`~lmsynth.landmarks.frame.LandmarkFrame`.
    :param transform: a :class:`SimilarityTransform`.
    :returns: a new :class:`~lmsynth.landmarks.frame.LandmarkFrame`.
    """
    coords = as_coords(frame)
    return LandmarkFrame(np.dot(coords, transform.linear.T) +
                         np.array(transform.translation))


def inverse_transform(transform):
    """Returns the inverse of a :class:`SimilarityTransform`."""
    scale = 1.0 / transform.scale
    rotation = -transform.rotation
    cos = math.cos(rotation)
    sin = math.sin(rotation)
    tx, ty = transform.translation
    translation = (-scale * (cos * tx - sin * ty),
                   -scale * (sin * tx + cos * ty))
    return SimilarityTransform(scale, rotation, translation)


def align_frame(frame, reference):
    """Aligns a frame onto a reference frame with the least-squares similarity
    transform.

    :param frame: the frame to align.
    :param reference: the reference frame.
    :returns: the aligned :class:`~lmsynth.landmarks.frame.LandmarkFrame`.
    :raises DegenerateFrame: if ``frame`` is degenerate.
    """
    return apply_transform(frame, fit_similarity(frame, reference))
