# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.synth.template` module provides the 3D face template used by
the synthetic face generator and by the pose estimation.

The template is a neutral 98-point face, in normalized coordinates (``x`` to
the right of the image, ``y`` downward, ``z`` toward the camera, the midpoint
between the eyes at the origin), together with named offset bases for the
identity and the expression factors.

All the tables are bilaterally symmetric: mirroring a table (``x -> -x``,
followed by the left/right index permutation of the topology) leaves it
unchanged. The only exception is the ``eyeball_offset`` expression basis,
which is antisymmetric (both pupils move in the same direction). Expression
bases are zero on the contour points.
"""

from collections import OrderedDict
import functools

import numpy as np

from lmsynth.errors import ShapeMismatch
from lmsynth.landmarks.frame import LandmarkFrame
from lmsynth.landmarks.topology import N_POINTS, WFLW98

IDENTITY_ATTRIBUTES = ("face_width", "jaw_width", "nose_width", "nose_length",
                       "eye_spacing", "eye_size", "lip_thickness",
                       "brow_height")

EXPRESSION_ATTRIBUTES = ("mouth_open", "smile", "eye_closure",
                         "eyeball_offset")

_MIRROR_X = np.array([-1.0, 1.0, 1.0])

_EYE_CENTER = (-0.33, -0.22)
_EYE_SIZE = (0.14, 0.055)
_MOUTH_CENTER = 0.52

# Maps the authored face to normalized coordinates: inter-ocular midpoint at
# the origin, whole face inside [-1, 1]^2
_ORIGIN = np.array([0.0, _EYE_CENTER[1], 0.0])
_SCALE = 0.8


def _symmetrize(table, mirror, antisymmetric=False):
    """Returns the exactly symmetric (or antisymmetric) part of a table."""
    mirrored = table[mirror] * _MIRROR_X
    if antisymmetric:
        return 0.5 * (table - mirrored)
    return 0.5 * (table + mirrored)


def _readonly(table):
    table = np.array(table, dtype=np.float64)
    table.setflags(write=False)
    return table


def _ellipse(center_x, center_y, width, height_up, height_down, n_points):
    """Points of a closed contour starting at the left corner and going
    clockwise (upper half first, y pointing downward)."""
    points = []
    for j in range(n_points):
        theta = np.pi - j * 2 * np.pi / n_points
        sin = np.sin(theta)
        height = height_up if sin > 0 else height_down
        points.append((center_x + width * np.cos(theta),
                       center_y - height * sin))
    return points


def _left_half():
    """The neutral face, authored for the left half of the image. The right
    half is filled by :func:`_symmetrize`."""
    # pylint: disable=too-many-locals
    base = np.zeros((N_POINTS, 3))

    # Contour, from the left temple to the right temple through the chin
    for i in range(33):
        phi = np.pi * (1 - i / 32)
        base[i] = (0.75 * np.cos(phi), -0.1 + 0.95 * np.sin(phi),
                   -0.1 - 0.55 * (1 - np.sin(phi)))

    # Left brow: upper edge outer -> inner, lower edge inner -> outer
    for j in range(5):
        x = -0.65 + 0.13 * j
        base[33 + j] = (x, -0.45 - 0.06 * np.sin(np.pi * j / 4),
                        0.08 - 0.4 * x ** 2)
    for k in range(4):
        x = -0.17 - 0.13 * k
        base[38 + k] = (x, -0.40 - 0.04 * np.sin(np.pi * (k + 1) / 5),
                        0.08 - 0.4 * x ** 2)

    # Nose bridge and nose bottom
    for j in range(4):
        base[51 + j] = (0.0, -0.28 + 0.12 * j, 0.12 + 0.1 * j)
    base[55] = (-0.15, 0.22, 0.22)
    base[56] = (-0.08, 0.26, 0.30)
    base[57] = (0.0, 0.28, 0.34)

    # Left eye, from the outer corner
    eye = _ellipse(_EYE_CENTER[0], _EYE_CENTER[1], _EYE_SIZE[0],
                   _EYE_SIZE[1], _EYE_SIZE[1], 8)
    for j, (x, y) in enumerate(eye):
        base[60 + j] = (x, y, -0.35 * x ** 2)

    # Lips, from the left corner
    for j, (x, y) in enumerate(_ellipse(0.0, _MOUTH_CENTER, 0.24, 0.07, 0.09,
                                        12)):
        base[76 + j] = (x, y, 0.24 - 0.5 * x ** 2)
    for j, (x, y) in enumerate(_ellipse(0.0, _MOUTH_CENTER + 0.01, 0.15, 0.02,
                                        0.02, 8)):
        base[88 + j] = (x, y, 0.2 - 0.5 * x ** 2)

    base[96] = (_EYE_CENTER[0], _EYE_CENTER[1],
                0.02 - 0.35 * _EYE_CENTER[0] ** 2)

    # Mirror the authored half
    mirror = WFLW98.mirror
    for i in range(N_POINTS):
        j = mirror[i]
        if j > i and not base[j].any():
            base[j] = base[i] * _MIRROR_X
    return base


def _identity_basis(base):
    """The identity offset tables."""
    x = base[:, 0]
    y = base[:, 1]
    sign = np.sign(x)
    basis = OrderedDict((name, np.zeros((N_POINTS, 3)))
                        for name in IDENTITY_ATTRIBUTES)

    contour = WFLW98.indices("contour")
    nose = WFLW98.indices("nose")
    eyes = WFLW98.indices("eyes")
    brows = WFLW98.indices("brows")
    outer_lip = WFLW98.indices("outer_lip")

    basis["face_width"][contour, 0] = 0.04 * x[contour]

    jaw = np.clip(y[contour] + 0.1, 0, None) / 0.95
    basis["jaw_width"][contour, 0] = 0.04 * x[contour] * jaw ** 2

    basis["nose_width"][nose, 0] = 0.4 * x[nose]
    basis["nose_length"][nose, 1] = 0.1 * (y[nose] + 0.28)

    eyes_and_pupils = np.concatenate((eyes, WFLW98.indices("pupils")))
    basis["eye_spacing"][eyes_and_pupils, 0] = 0.04 * sign[eyes_and_pupils]

    eye_center = np.column_stack((sign[eyes] * -_EYE_CENTER[0],
                                  np.full(len(eyes), _EYE_CENTER[1])))
    basis["eye_size"][eyes, :2] = 0.2 * (base[eyes, :2] - eye_center)

    basis["lip_thickness"][outer_lip, 1] = 0.3 * (y[outer_lip] -
                                                  _MOUTH_CENTER)
    basis["brow_height"][brows, 1] = -0.05

    return basis


def _expression_basis(base):
    """The expression offset tables (zero on the contour)."""
    x = base[:, 0]
    y = base[:, 1]
    sign = np.sign(x)
    basis = OrderedDict((name, np.zeros((N_POINTS, 3)))
                        for name in EXPRESSION_ATTRIBUTES)

    lower_lip = [83, 84, 85, 86, 87]
    inner_lower_lip = [93, 94, 95]
    corners = [76, 82, 88, 92]
    basis["mouth_open"][lower_lip, 1] = 0.12
    basis["mouth_open"][inner_lower_lip, 1] = 0.11
    basis["mouth_open"][corners, 1] = 0.05

    basis["smile"][[76, 82], 0] = 0.05 * sign[[76, 82]]
    basis["smile"][[88, 92], 0] = 0.04 * sign[[88, 92]]
    basis["smile"][corners, 1] = -0.04
    basis["smile"][[77, 78, 80, 81], 1] = -0.015

    upper_lids = [61, 62, 63, 69, 70, 71]
    lower_lids = [65, 66, 67, 73, 74, 75]
    basis["eye_closure"][upper_lids, 1] = 0.95 * (_EYE_CENTER[1] -
                                                  y[upper_lids])
    basis["eye_closure"][lower_lids, 1] = 0.5 * (_EYE_CENTER[1] -
                                                 y[lower_lids])

    basis["eyeball_offset"][[96, 97], 0] = 0.07

    return basis


class FaceTemplate3D(object):
    """A 3D face template with identity and expression offset bases.

    :param base: the neutral face, an array of shape ``(98, 3)``.
    :param identity_basis: an ordered mapping from identity attribute names
        to offset arrays of shape ``(98, 3)``.
    :type identity_basis: :class:`collections.OrderedDict`
    :param expression_basis: an ordered mapping from expression attribute
        names to offset arrays of shape ``(98, 3)``.
    :type expression_basis: :class:`collections.OrderedDict`
    :param topology: the landmark topology.
    :raises ShapeMismatch: if a table does not have shape ``(98, 3)``.
    """
    def __init__(self, base, identity_basis, expression_basis,
                 topology=WFLW98):
        self._base = _readonly(base)
        self._identity_basis = OrderedDict(
            (name, _readonly(table)) for name, table in identity_basis.items())
        self._expression_basis = OrderedDict(
            (name, _readonly(table))
            for name, table in expression_basis.items())
        self._topology = topology

        for table in ([self._base] + list(self._identity_basis.values()) +
                      list(self._expression_basis.values())):
            if table.shape != (topology.n_points, 3):
                raise ShapeMismatch("the template tables should have shape "
                                    "({}, 3)".format(topology.n_points))

    @property
    def base(self):
        """The neutral face, of shape ``(98, 3)``."""
        return self._base

    @property
    def identity_basis(self):
        """The identity offset tables."""
        return self._identity_basis

    @property
    def expression_basis(self):
        """The expression offset tables."""
        return self._expression_basis

    @property
    def topology(self):
        """The landmark topology."""
        return self._topology

    def shape(self, identity_coefficients=None, expression_coefficients=None):
        """Returns the 3D face ``base + sum(id_i * B_i) + sum(expr_j * E_j)``.

        :param identity_coefficients: a mapping from identity attribute names
            to coefficients (missing attributes are 0).
        :type identity_coefficients: dict, optional
        :param expression_coefficients: a mapping from expression attribute
            names to coefficients (missing attributes are 0).
        :type expression_coefficients: dict, optional
        :returns: a :class:`numpy.ndarray` of shape ``(98, 3)``.
        """
        points = np.array(self._base)
        for coefficients, basis in (
                (identity_coefficients, self._identity_basis),
                (expression_coefficients, self._expression_basis)):
            for name, value in (coefficients or {}).items():
                if value:
                    points += value * basis[name]
        return points

    def mirror_table(self, table):
        """Mirrors a ``(98, 3)`` table (``x -> -x`` and left/right index
        permutation)."""
        return table[self._topology.mirror] * _MIRROR_X


@functools.lru_cache(maxsize=None)
def default_template():
    """Returns the default :class:`FaceTemplate3D` (a shared, read-only
    instance)."""
    mirror = WFLW98.mirror
    authored = _symmetrize(_left_half(), mirror)

    identity_basis = OrderedDict(
        (name, _SCALE * _symmetrize(table, mirror))
        for name, table in _identity_basis(authored).items())
    expression_basis = OrderedDict(
        (name, _SCALE * _symmetrize(table, mirror,
                                    antisymmetric=(name == "eyeball_offset")))
        for name, table in _expression_basis(authored).items())

    base = _SCALE * (authored - _ORIGIN)
    return FaceTemplate3D(base, identity_basis, expression_basis)


def canonical_frame(template=None):
    """Returns the orthographic projection of the neutral, frontal face of a
    template, used as the reference of the frame alignment.

    :param template: a :class:`FaceTemplate3D` (the default template if
        ``None``).
    :returns: a :class:`~lmsynth.landmarks.frame.LandmarkFrame`.
    """
    if template is None:
        template = default_template()
    return LandmarkFrame(template.base[:, :2])
