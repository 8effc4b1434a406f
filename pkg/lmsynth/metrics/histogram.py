# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.metrics.histogram` module computes histograms of CSIM
scores.
"""

from collections import namedtuple

import numpy as np

from lmsynth.errors import ConfigError

Histogram = namedtuple("Histogram", ["edges", "counts"])
Histogram.__doc__ = """A histogram with uniform bins.

:param edges: the ``bins + 1`` edges of the bins.
:param counts: the ``bins`` counts.
"""


def csim_histogram(scores, bins=20):
    """Counts CSIM scores in uniform bins over ``[-1, 1]``. The last bin
    includes 1.

    :param scores: an iterable of floats in ``[-1, 1]``.
    :param bins: the number of bins.
    :type bins: int
    :returns: a :class:`Histogram`.
    :raises ConfigError: if ``bins < 1``.
    """
    if bins < 1:
        raise ConfigError("the number of bins should be at least 1, got "
                          "{}".format(bins))
    scores = np.clip(np.asarray(list(scores), dtype=np.float64), -1.0, 1.0)
    counts, edges = np.histogram(scores, bins=bins, range=(-1.0, 1.0))
    return Histogram(edges, counts)
