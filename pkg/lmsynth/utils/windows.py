# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.utils.windows` module contains the window functions used by
the image metrics.
"""

import numpy as np
from scipy.signal import windows


def gaussian(length, sigma):
    """Returns a symmetric Gaussian window whose values sum to 1.

    :param length: the number of points of the window.
    :type length: :class:`int`
    :param sigma: the standard deviation of the window, in points.
    :type sigma: :class:`float`
    :return: the window as a :class:`numpy.ndarray` of shape (``length``,).
    """
    if length <= 0:
        return np.zeros(0)

    window = windows.gaussian(length, sigma)
    return window / window.sum()


def outer(window1, window2=None):
    """Returns the separable 2D window built from two 1D windows.

    :param window1: a :class:`numpy.ndarray` of shape (``m``,).
    :param window2: a :class:`numpy.ndarray` of shape (``n``,), or ``None``
        to use ``window1`` on both axes.
    :returns: a :class:`numpy.ndarray` of shape (``m``, ``n``).
    """
    if window2 is None:
        window2 = window1

    return np.outer(window1, window2)
