# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.synth.face` module generates synthetic landmark frames from
known identity, expression and pose factors.
"""

from collections import OrderedDict

import numpy as np

from lmsynth.errors import InvalidK, OutOfRange, UnknownAttribute
from lmsynth.landmarks.frame import LandmarkFrame, LandmarkSequence
from lmsynth.landmarks.pose import rotation_matrix
from .template import (EXPRESSION_ATTRIBUTES, IDENTITY_ATTRIBUTES,
                       default_template)


class _Coefficients(object):
    """Named coefficients with a valid range per name."""
    _ranges = OrderedDict()

    def __init__(self, coefficients=None, **kwargs):
        values = OrderedDict((name, 0.0) for name in self._ranges)
        for name, value in dict(coefficients or {}, **kwargs).items():
            if name not in values:
                raise UnknownAttribute('unknown attribute "{}"'.format(name))
            low, high = self._ranges[name]
            value = float(value)
            if not low <= value <= high:
                raise OutOfRange("{} should be in [{}, {}], got {}".format(
                    name, low, high, value))
            values[name] = value
        self._values = values

    def __repr__(self):
        return "{}({})".format(type(self).__name__, ", ".join(
            "{}={:.4g}".format(name, value)
            for name, value in self._values.items()))

    def __eq__(self, other):
        # pylint: disable=protected-access
        return type(self) is type(other) and self._values == other._values

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(tuple(self._values.items()))

    def __getitem__(self, name):
        return self._values[name]

    @classmethod
    def names(cls):
        """The names of the coefficients."""
        return tuple(cls._ranges)

    @classmethod
    def range_of(cls, name):
        """Returns the valid range ``(low, high)`` of a coefficient.

        :raises UnknownAttribute: if there is no coefficient with that name.
        """
        if name not in cls._ranges:
            raise UnknownAttribute('unknown attribute "{}"'.format(name))
        return cls._ranges[name]

    @classmethod
    def from_array(cls, values):
        """Builds the coefficients from an array ordered as :meth:`names`."""
        return cls(zip(cls._ranges, values))

    def to_array(self):
        """Returns the coefficients as an array ordered as :meth:`names`."""
        return np.array(list(self._values.values()))

    def to_dict(self):
        """Returns the coefficients as an ordered dict."""
        return OrderedDict(self._values)

    def replace(self, **kwargs):
        """Returns a copy with some coefficients replaced."""
        return type(self)(self._values, **kwargs)


class IdentityParams(_Coefficients):
    """The identity factors of a synthetic face, one coefficient in ``[-1,
    1]`` per identity basis entry of the template (missing coefficients are
    0).

    >>> IdentityParams(nose_width=0.5)["nose_width"]
    0.5

    :raises UnknownAttribute: if a name is not an identity attribute.
    :raises OutOfRange: if a coefficient is out of ``[-1, 1]``.
    """
    _ranges = OrderedDict((name, (-1.0, 1.0)) for name in IDENTITY_ATTRIBUTES)


class ExpressionParams(_Coefficients):
    """The expression factors of a synthetic face: ``mouth_open``, ``smile``
    and ``eye_closure`` in ``[0, 1]``, ``eyeball_offset`` in ``[-1, 1]``
    (missing coefficients are 0).

    :raises UnknownAttribute: if a name is not an expression attribute.
    :raises OutOfRange: if a coefficient is out of its range.
    """
    _ranges = OrderedDict((name, (-1.0, 1.0) if name == "eyeball_offset"
                           else (0.0, 1.0))
                          for name in EXPRESSION_ATTRIBUTES)


def project(points, pose):
    """Rotates 3D points by a pose and projects them orthographically on the
    image plane.

    :param points: an array of shape ``(N, 3)``.
    :param pose: a :class:`~lmsynth.landmarks.pose.PoseAngles`.
    :returns: an array of shape ``(N, 2)``.
    """
    return np.dot(points, rotation_matrix(pose)[:2].T)


def synthesize_frame(identity, expression, pose, template=None):
    """Generates the landmarks of a synthetic face.

    The 3D face ``base + sum(id_i * B_i) + sum(expr_j * E_j)`` is rotated by
    the pose and projected under weak perspective. The template is already in
    normalized coordinates, so no data-dependent normalization is applied:
    points that do not move in 3D do not move in the frame.

    :param identity: the identity factors.
    :type identity: :class:`IdentityParams`
    :param expression: the expression factors.
    :type expression: :class:`ExpressionParams`
    :param pose: the head pose.
    :type pose: :class:`~lmsynth.landmarks.pose.PoseAngles`
    :param template: a :class:`~lmsynth.synth.template.FaceTemplate3D` (the
        default template if ``None``).
    :returns: a :class:`~lmsynth.landmarks.frame.LandmarkFrame`.
    """
    if template is None:
        template = default_template()
    points = template.shape(identity.to_dict(), expression.to_dict())
    return LandmarkFrame(project(points, pose))


def manipulate_attribute(identity, expression, pose, attr_name, steps,
                         template=None):
    """Sweeps one attribute of a synthetic face, all the other factors being
    fixed.

    Identity attributes are swept linearly from -1 to 1; expression
    attributes from the low to the high end of their range.

    :param identity: the identity factors.
    :type identity: :class:`IdentityParams`
    :param expression: the expression factors.
    :type expression: :class:`ExpressionParams`
    :param pose: the head pose.
    :type pose: :class:`~lmsynth.landmarks.pose.PoseAngles`
    :param attr_name: the name of an identity or expression attribute.
    :type attr_name: str
    :param steps: the number of frames.
    :type steps: int
    :returns: a :class:`~lmsynth.landmarks.frame.LandmarkSequence`.
    :raises UnknownAttribute: if ``attr_name`` is not an attribute of the
        template.
    :raises InvalidK: if ``steps < 2``.
    """
    if attr_name in IdentityParams.names():
        low, high = IdentityParams.range_of(attr_name)
    elif attr_name in ExpressionParams.names():
        low, high = ExpressionParams.range_of(attr_name)
    else:
        raise UnknownAttribute('unknown attribute "{}", expected one of '
                               '{}'.format(attr_name, ", ".join(
                                   IDENTITY_ATTRIBUTES +
                                   EXPRESSION_ATTRIBUTES)))
    if steps < 2:
        raise InvalidK("steps should be at least 2, got {}".format(steps))

    frames = []
    for value in np.linspace(low, high, steps):
        if attr_name in IdentityParams.names():
            frame = synthesize_frame(identity.replace(**{attr_name: value}),
                                     expression, pose, template)
        else:
            frame = synthesize_frame(identity,
                                     expression.replace(**{attr_name: value}),
                                     pose, template)
        frames.append(frame)
    return LandmarkSequence(frames)
