# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.landmarks.interpolate` module implements the linear
upsampling of two endpoint frames into a sequence, which is both the input of
the landmark sequence generator and the linear interpolation (LI) baseline.
"""

import numpy as np

from lmsynth.errors import InvalidK
from .frame import LandmarkSequence, as_coords


def interpolation_weights(K):
    """Returns the interpolation weights ``t_k = k / (K - 1)`` for ``k`` in
    ``0, ..., K - 1``.

    :param K: the number of frames.
    :type K: int
    :returns: a :class:`numpy.ndarray` of shape ``(K,)``.
    :raises InvalidK: if ``K < 2``.
    """
    if K < 2:
        raise InvalidK("K should be at least 2, got {}".format(K))
    return np.arange(K, dtype=np.float64) / (K - 1)


def lerp(start, end, t):
    """Linear interpolation ``(1 - t) * start + t * end``.

    ``start`` and ``end`` can be arrays of any (identical) shape. The
    generator and the baseline both interpolate with this function.
    """
    return (1.0 - t) * start + t * end


def upsample_linear(p_a, p_b, K):
    """Upsamples two endpoint frames into a sequence of ``K`` frames.

    Frame ``k`` (0-based) is ``(1 - t_k) * p_a + t_k * p_b``, with
    ``t_k = k / (K - 1)``; the first frame is ``p_a`` and the last one is
    ``p_b``.

    :param p_a: the first frame.
    :type p_a: :class:`~lmsynth.landmarks.frame.LandmarkFrame`
    :param p_b: the last frame.
    :type p_b: :class:`~lmsynth.landmarks.frame.LandmarkFrame`
    :param K: the number of frames of the output.
    :type K: int
    :returns: a :class:`~lmsynth.landmarks.frame.LandmarkSequence`.
    :raises InvalidK: if ``K < 2``.
    """
    start = as_coords(p_a)
    end = as_coords(p_b)
    frames = [lerp(start, end, t) for t in interpolation_weights(K)]
    return LandmarkSequence(frames)
