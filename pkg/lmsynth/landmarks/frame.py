# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.landmarks.frame` module provides the landmark data model: a
:class:`LandmarkFrame` is a single set of 98 points, and a
:class:`LandmarkSequence` an ordered list of frames of one identity.

Frames and sequences are immutable: their arrays are read-only copies.
"""

import numpy as np

from lmsynth.errors import DataError, InvalidK, OutOfRange, WrongLength
from .topology import N_POINTS, WFLW98

FLAT_LENGTH = 2 * N_POINTS


def _readonly(array):
    array = np.array(array, dtype=np.float64)
    array.setflags(write=False)
    return array


def as_coords(frame):
    """Returns the coordinates of a frame as a :class:`numpy.ndarray` of shape
    ``(98, 2)``.

    :param frame: a :class:`LandmarkFrame` or an array-like of shape
        ``(98, 2)``.
    """
    if isinstance(frame, LandmarkFrame):
        return frame.coords
    return LandmarkFrame(frame).coords


class LandmarkFrame(object):
    """A set of 98 facial landmarks in normalized face coordinates.

    :param coords: an array-like of shape ``(98, 2)``, each row containing the
        ``(x, y)`` coordinates of a landmark.
    :raises WrongLength: if ``coords`` does not have 98 rows of two values.
    :raises DataError: if some coordinates are not finite.
    """
    __slots__ = ("_coords",)

    def __init__(self, coords):
        coords = _readonly(coords)
        if coords.shape != (N_POINTS, 2):
            raise WrongLength("a frame should have shape ({}, 2), got "
                              "{}".format(N_POINTS, coords.shape))
        if not np.all(np.isfinite(coords)):
            raise DataError("the coordinates of a frame should be finite")
        self._coords = coords

    def __repr__(self):
        return "LandmarkFrame(center=({:.4f}, {:.4f}))".format(
            *self._coords.mean(axis=0))

    @property
    def coords(self):
        """The read-only coordinates, of shape ``(98, 2)``."""
        return self._coords


class LandmarkSequence(object):
    """An ordered list of frames of one identity.

    :param frames: a list of :class:`LandmarkFrame` (or of arrays of shape
        ``(98, 2)``), or an array of shape ``(K, 98, 2)``.
    :param identity_label: the identity class id, if known.
    :type identity_label: int, optional
    :raises InvalidK: if the sequence has fewer than two frames.
    """
    def __init__(self, frames, identity_label=None):
        array = np.stack([as_coords(frame) for frame in frames]) \
            if len(frames) else np.zeros((0, N_POINTS, 2))
        if array.shape[0] < 2:
            raise InvalidK("a sequence should have at least two frames, "
                           "got {}".format(array.shape[0]))
        array.setflags(write=False)
        self._array = array
        self._identity_label = identity_label

    def __len__(self):
        return self._array.shape[0]

    def __getitem__(self, k):
        return LandmarkFrame(self._array[k])

    def __iter__(self):
        for k in range(len(self)):
            yield self[k]

    def __repr__(self):
        return "LandmarkSequence(K={}, identity_label={})".format(
            len(self), self._identity_label)

    @property
    def identity_label(self):
        """The identity class id, or ``None``."""
        return self._identity_label

    def to_array(self):
        """Returns the frames as a read-only array of shape ``(K, 98, 2)``."""
        return self._array


def flatten(frame):
    """Returns the coordinates of a frame as a vector of length 196, with the
    ``x`` and ``y`` coordinates of each point interleaved.

    :param frame: a :class:`LandmarkFrame` or an array of shape ``(98, 2)``.
    :returns: a :class:`numpy.ndarray` of shape ``(196,)``.
    """
    return as_coords(frame).reshape(FLAT_LENGTH).copy()


def unflatten(vector):
    """Inverse of :func:`flatten`.

    :param vector: an array-like of length 196.
    :returns: a :class:`LandmarkFrame`.
    :raises WrongLength: if the vector does not have 196 values.
    """
    vector = np.asarray(vector, dtype=np.float64)
    if vector.shape != (FLAT_LENGTH,):
        raise WrongLength("a flattened frame should have {} values, got "
                          "shape {}".format(FLAT_LENGTH, vector.shape))
    return LandmarkFrame(vector.reshape(N_POINTS, 2))


def add_noise(frame, sigma, seed):
    """Adds i.i.d. isotropic Gaussian noise to every coordinate of a frame.

    :param frame: a :class:`LandmarkFrame`.
    :param sigma: the standard deviation of the noise, in normalized
        coordinates.
    :type sigma: float
    :param seed: the seed of the random generator.
    :type seed: int
    :returns: a new :class:`LandmarkFrame`.
    :raises OutOfRange: if ``sigma`` is negative.
    """
    if sigma < 0:
        raise OutOfRange("sigma should be non-negative, got {}".format(sigma))
    coords = as_coords(frame)
    if sigma == 0:
        return LandmarkFrame(coords)

    rng = np.random.default_rng(seed)
    return LandmarkFrame(coords + rng.normal(0.0, sigma, size=coords.shape))


def mirror_frame(frame, topology=WFLW98):
    """Flips a frame horizontally (``x -> -x``) and reorders its points so
    that each index keeps its semantic (e.g. the left eye stays the left
    eye).

    :param frame: a :class:`LandmarkFrame`.
    :param topology: the topology giving the left/right permutation.
    :type topology: :class:`~lmsynth.landmarks.topology.LandmarkTopology`
    :returns: a new :class:`LandmarkFrame`.
    """
    coords = as_coords(frame)[topology.mirror].copy()
    coords[:, 0] *= -1
    return LandmarkFrame(coords)
