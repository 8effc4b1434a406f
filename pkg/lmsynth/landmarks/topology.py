# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.landmarks.topology` module describes the grouping of the 98
facial landmarks.

The default grouping, :data:`WFLW98`, follows the WFLW convention::

    contour     0-32      nose        51-59     outer_lip   76-87
    brows      33-50      eyes        60-75     inner_lip   88-95
                                                pupils      96-97
"""

from collections import OrderedDict

import numpy as np

from lmsynth.errors import ConfigError

N_POINTS = 98


def _pairs_to_permutation(pairs, n_points):
    """Build a permutation array from a list of swapped index pairs. Indices
    that appear in no pair are mapped to themselves."""
    permutation = np.arange(n_points)
    for i, j in pairs:
        permutation[i] = j
        permutation[j] = i
    return permutation


class LandmarkTopology(object):
    """The grouping of the landmarks of a frame.

    :param groups: an ordered mapping from group names to ranges of indices.
    :type groups: :class:`collections.OrderedDict`
    :param mirror_pairs: the pairs of indices that are swapped when a face is
        flipped horizontally.
    :type mirror_pairs: list of (int, int)
    :param polylines: the drawing connectivity, as a list of ``(indices,
        closed)`` tuples.
    :type polylines: list
    :param n_points: the number of landmarks.
    :type n_points: int
    :raises ConfigError: if the groups are not disjoint, or if their union is
        not ``{0, ..., n_points - 1}``.
    """
    def __init__(self, groups, mirror_pairs, polylines, n_points=N_POINTS):
        self._groups = OrderedDict(
            (name, range(indices.start, indices.stop))
            for name, indices in groups.items())
        self._n_points = n_points

        seen = np.zeros(n_points, dtype=int)
        for name, indices in self._groups.items():
            if indices.start < 0 or indices.stop > n_points:
                raise ConfigError(
                    'group "{}" is out of the range of the {} points'.format(
                        name, n_points))
            seen[indices.start:indices.stop] += 1
        if np.any(seen != 1):
            raise ConfigError("the landmark groups should partition the "
                              "indices 0..{}".format(n_points - 1))

        self._mirror = _pairs_to_permutation(mirror_pairs, n_points)
        self._mirror.setflags(write=False)
        self._polylines = [(tuple(indices), bool(closed))
                           for indices, closed in polylines]

    def __repr__(self):
        return "LandmarkTopology({})".format(", ".join(
            "{}={}-{}".format(name, r.start, r.stop - 1)
            for name, r in self._groups.items()))

    @property
    def n_points(self):
        """The number of landmarks."""
        return self._n_points

    @property
    def groups(self):
        """The ordered mapping from group names to ranges of indices."""
        return self._groups

    @property
    def mirror(self):
        """An array ``m`` of shape ``(n_points,)`` such that the point ``i``
        of a horizontally flipped face is the point ``m[i]`` of the original
        face."""
        return self._mirror

    def indices(self, name):
        """Returns the indices of a group as a :class:`numpy.ndarray`.

        :param name: the name of the group.
        :type name: str
        :raises KeyError: if there is no group with that name.
        """
        return np.arange(self._groups[name].start, self._groups[name].stop)

    def polylines(self):
        """Returns the drawing connectivity of the landmarks, as a list of
        ``(indices, closed)`` tuples, where ``indices`` is a tuple of
        landmark indices and ``closed`` is ``True`` when the last point is
        connected to the first one. A polyline with a single index is drawn
        as a point."""
        return list(self._polylines)


_WFLW_MIRROR_PAIRS = (
    [(i, 32 - i) for i in range(16)] +
    # brows
    [(33, 46), (34, 45), (35, 44), (36, 43), (37, 42),
     (38, 50), (39, 49), (40, 48), (41, 47)] +
    # nose
    [(55, 59), (56, 58)] +
    # eyes
    [(60, 72), (61, 71), (62, 70), (63, 69), (64, 68),
     (65, 75), (66, 74), (67, 73)] +
    # lips
    [(76, 82), (77, 81), (78, 80), (83, 87), (84, 86),
     (88, 92), (89, 91), (93, 95)] +
    # pupils
    [(96, 97)]
)

_WFLW_POLYLINES = [
    (range(0, 33), False),
    (range(33, 42), True),
    (range(42, 51), True),
    (range(51, 55), False),
    (range(55, 60), False),
    (range(60, 68), True),
    (range(68, 76), True),
    (range(76, 88), True),
    (range(88, 96), True),
    ((96,), False),
    ((97,), False),
]

WFLW98 = LandmarkTopology(
    OrderedDict([
        ("contour", range(0, 33)),
        ("brows", range(33, 51)),
        ("nose", range(51, 60)),
        ("eyes", range(60, 76)),
        ("outer_lip", range(76, 88)),
        ("inner_lip", range(88, 96)),
        ("pupils", range(96, 98)),
    ]),
    _WFLW_MIRROR_PAIRS,
    _WFLW_POLYLINES)
"""The 98-point WFLW topology."""
