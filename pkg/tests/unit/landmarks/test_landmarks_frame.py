# -*- coding: utf-8 -*-

"""
Tests for the lmsynth.landmarks.frame module.
"""

import pytest
import numpy as np
from numpy.testing import assert_almost_equal, assert_array_equal

from lmsynth.errors import DataError, InvalidK, OutOfRange, WrongLength
from lmsynth.landmarks.frame import (FLAT_LENGTH, LandmarkFrame,
                                     LandmarkSequence, add_noise, flatten,
                                     mirror_frame, unflatten)
from lmsynth.synth.template import canonical_frame


def random_coords(seed=0):
    """Returns random coordinates of shape (98, 2)."""
    return np.random.default_rng(seed).uniform(-1, 1, (98, 2))


@pytest.mark.parametrize("shape", [(97, 2), (98, 3), (196,), (0, 2)])
def test_frame_wrong_shape(shape):
    """Run tests for the shape check of LandmarkFrame."""
    with pytest.raises(WrongLength):
        LandmarkFrame(np.zeros(shape))


def test_frame_not_finite():
    """Run tests for the finiteness check of LandmarkFrame."""
    coords = random_coords()
    coords[10, 1] = np.nan
    with pytest.raises(DataError):
        LandmarkFrame(coords)


def test_frame_readonly():
    """The coordinates of a frame are a read-only copy."""
    coords = random_coords()
    frame = LandmarkFrame(coords)
    coords[0, 0] = 42
    assert frame.coords[0, 0] != 42
    with pytest.raises(ValueError):
        frame.coords[0, 0] = 42


def test_flatten_interleaves():
    """Run tests for flatten: x and y coordinates are interleaved."""
    coords = random_coords()
    vector = flatten(LandmarkFrame(coords))
    assert vector.shape == (FLAT_LENGTH,)
    assert_array_equal(vector[:4], [coords[0, 0], coords[0, 1],
                                    coords[1, 0], coords[1, 1]])
    assert_array_equal(unflatten(vector).coords, coords)


@pytest.mark.parametrize("length", [0, 195, 197])
def test_unflatten_wrong_length(length):
    """Run tests for the length check of unflatten."""
    with pytest.raises(WrongLength):
        unflatten(np.zeros(length))


@pytest.mark.parametrize("n_frames", [0, 1])
def test_sequence_too_short(n_frames):
    """A sequence has at least two frames."""
    with pytest.raises(InvalidK):
        LandmarkSequence([random_coords(i) for i in range(n_frames)])


def test_sequence():
    """Run tests for LandmarkSequence."""
    frames = [random_coords(i) for i in range(4)]
    sequence = LandmarkSequence(frames, identity_label=7)
    assert len(sequence) == 4
    assert sequence.identity_label == 7
    assert sequence.to_array().shape == (4, 98, 2)
    assert_array_equal(sequence[2].coords, frames[2])
    assert len(list(sequence)) == 4


def test_add_noise():
    """Run tests for add_noise."""
    frame = LandmarkFrame(random_coords())
    assert_array_equal(add_noise(frame, 0.0, 1).coords, frame.coords)

    noisy1 = add_noise(frame, 0.05, 3)
    noisy2 = add_noise(frame, 0.05, 3)
    assert_array_equal(noisy1.coords, noisy2.coords)
    assert not np.array_equal(noisy1.coords, add_noise(frame, 0.05, 4).coords)

    deviation = np.std(noisy1.coords - frame.coords)
    assert 0.03 < deviation < 0.07

    with pytest.raises(OutOfRange):
        add_noise(frame, -0.1, 0)


def test_mirror_frame():
    """Mirroring twice gives the original frame, and the canonical face is
    symmetric."""
    frame = LandmarkFrame(random_coords())
    assert_almost_equal(mirror_frame(mirror_frame(frame)).coords,
                        frame.coords)

    canonical = canonical_frame()
    assert_almost_equal(mirror_frame(canonical).coords, canonical.coords)
