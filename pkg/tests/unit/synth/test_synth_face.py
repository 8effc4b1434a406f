# -*- coding: utf-8 -*-

"""
Tests for the lmsynth.synth.face and lmsynth.synth.template modules.
"""

import itertools

import pytest
import numpy as np
from numpy.testing import assert_almost_equal, assert_array_equal

from lmsynth.errors import InvalidK, OutOfRange, UnknownAttribute
from lmsynth.landmarks.pose import PoseAngles
from lmsynth.landmarks.topology import WFLW98
from lmsynth.synth.face import (ExpressionParams, IdentityParams,
                                manipulate_attribute, synthesize_frame)
from lmsynth.synth.template import (EXPRESSION_ATTRIBUTES,
                                    IDENTITY_ATTRIBUTES, canonical_frame,
                                    default_template)


def test_template_symmetry():
    """The template tables are symmetric, except the antisymmetric eyeball
    offset basis."""
    template = default_template()
    assert_almost_equal(template.mirror_table(template.base), template.base)
    for table in template.identity_basis.values():
        assert_almost_equal(template.mirror_table(table), table)
    for name, table in template.expression_basis.items():
        if name == "eyeball_offset":
            assert_almost_equal(template.mirror_table(table), -table)
        else:
            assert_almost_equal(template.mirror_table(table), table)


def test_expression_basis_contour():
    """Expressions do not move the contour."""
    contour = WFLW98.indices("contour")
    for table in default_template().expression_basis.values():
        assert_array_equal(table[contour], 0)


def test_neutral_frame():
    """The neutral frontal face is the canonical frame."""
    frame = synthesize_frame(IdentityParams(), ExpressionParams(),
                             PoseAngles())
    assert_almost_equal(frame.coords, canonical_frame().coords)
    assert np.all(np.abs(frame.coords) <= 1.0)


@pytest.mark.parametrize("params_class, values", [
    (IdentityParams, {"nose_width": 1.5}),
    (IdentityParams, {"face_width": -1.01}),
    (ExpressionParams, {"smile": -0.1}),
    (ExpressionParams, {"eyeball_offset": 2}),
])
def test_params_out_of_range(params_class, values):
    """Coefficients are checked against their range."""
    with pytest.raises(OutOfRange):
        params_class(values)


def test_params_unknown_attribute():
    """Unknown names are rejected."""
    with pytest.raises(UnknownAttribute):
        IdentityParams(smile=0.5)
    with pytest.raises(UnknownAttribute):
        ExpressionParams(nose_width=0.5)


def test_params():
    """Run tests for the coefficient containers."""
    identity = IdentityParams(nose_width=0.5)
    assert identity["nose_width"] == 0.5
    assert identity["face_width"] == 0.0
    assert IdentityParams.names() == IDENTITY_ATTRIBUTES
    assert ExpressionParams.names() == EXPRESSION_ATTRIBUTES
    assert IdentityParams.from_array(identity.to_array()) == identity
    assert identity.replace(nose_width=0.1)["nose_width"] == 0.1
    assert identity != IdentityParams()


@pytest.mark.parametrize("attr", IDENTITY_ATTRIBUTES + EXPRESSION_ATTRIBUTES)
def test_manipulate_attribute(attr):
    """Sweeping an attribute moves the face, and expressions leave the
    contour in place."""
    sequence = manipulate_attribute(IdentityParams(), ExpressionParams(),
                                    PoseAngles(), attr, 5)
    assert len(sequence) == 5
    frames = sequence.to_array()
    assert not np.allclose(frames[0], frames[-1])

    if attr in EXPRESSION_ATTRIBUTES:
        contour = WFLW98.indices("contour")
        for frame in frames[1:]:
            assert_array_equal(frame[contour], frames[0][contour])


def test_manipulate_attribute_errors():
    """Run tests for the argument checks of manipulate_attribute."""
    with pytest.raises(UnknownAttribute):
        manipulate_attribute(IdentityParams(), ExpressionParams(),
                             PoseAngles(), "ear_size", 5)
    with pytest.raises(InvalidK):
        manipulate_attribute(IdentityParams(), ExpressionParams(),
                             PoseAngles(), "smile", 1)


def extreme_identities():
    """Identities with every factor at an end of its range."""
    return [IdentityParams({name: sign for name in IDENTITY_ATTRIBUTES})
            for sign in (-1.0, 1.0)] + [
                IdentityParams({
                    name: (-1.0) ** i
                    for i, name in enumerate(IDENTITY_ATTRIBUTES)})]


def extreme_expressions():
    """Expressions with every factor at an end of its range."""
    return [ExpressionParams(),
            ExpressionParams(mouth_open=1, smile=1, eye_closure=1,
                             eyeball_offset=-1),
            ExpressionParams(mouth_open=1, smile=1, eyeball_offset=1)]


def test_shape_norm():
    """Every 3D point of the extreme faces lies inside the unit ball, so that
    no rotation can project it out of [-1, 1]^2."""
    template = default_template()
    for identity, expression in itertools.product(extreme_identities(),
                                                  extreme_expressions()):
        points = template.shape(identity.to_dict(), expression.to_dict())
        assert np.max(np.linalg.norm(points, axis=1)) < 1


@pytest.mark.parametrize("pose", list(itertools.product((-90, 0, 90),
                                                        (-90, 0, 90),
                                                        (-90, 45, 90))))
def test_frame_range(pose):
    """The frames of the extreme faces stay inside [-1, 1]^2 at the extreme
    poses."""
    for identity, expression in itertools.product(extreme_identities(),
                                                  extreme_expressions()):
        coords = synthesize_frame(identity, expression,
                                  PoseAngles(*pose)).coords
        assert np.all(np.abs(coords) <= 1)
