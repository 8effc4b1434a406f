# -*- coding: utf-8 -*-

"""
Tests for the lmsynth.metrics.raster and lmsynth.metrics.histogram modules.
"""

import pytest
import numpy as np
from numpy.testing import assert_array_equal

from lmsynth.errors import ConfigError
from lmsynth.metrics.histogram import csim_histogram
from lmsynth.metrics.raster import pixel_coordinates, rasterize_landmarks
from lmsynth.synth.template import canonical_frame


def test_pixel_coordinates():
    """The corners of the normalized square are mapped to the corners of the
    image."""
    coords = np.zeros((98, 2))
    coords[0] = (-1.2, -1.2)
    coords[1] = (1.2, 1.2)
    coords[2] = (1.2, -1.2)
    pixels = pixel_coordinates(coords, 33, 65)
    assert_array_equal(pixels[0], [0, 0])
    assert_array_equal(pixels[1], [64, 32])
    assert_array_equal(pixels[2], [64, 0])
    assert_array_equal(pixels[3], [32, 16])


@pytest.mark.parametrize("style", ["lines", "points"])
def test_rasterize_landmarks(style):
    """The image is bright on the landmarks and dark far from the face."""
    frame = canonical_frame()
    image = rasterize_landmarks(frame, 48, 40, style=style)
    assert image.shape == (48, 40, 1)
    assert np.all(image >= 0) and np.all(image <= 1)

    column, row = np.rint(pixel_coordinates(frame, 48, 40)[57]).astype(int)
    assert image[row, column, 0] > 0.5
    assert image[0, 0, 0] < 1e-3


def test_rasterize_lines_cover_points():
    """The lines style draws at least the points style."""
    frame = canonical_frame()
    lines = rasterize_landmarks(frame, 32, 32, style="lines")
    points = rasterize_landmarks(frame, 32, 32, style="points")
    assert np.all(lines >= points - 1e-12)
    assert lines.sum() > points.sum()


@pytest.mark.parametrize("kwargs", [
    {"height": 8},
    {"width": 15},
    {"style": "filled"},
    {"sigma": 0},
])
def test_rasterize_invalid(kwargs):
    """Run tests for the checks of rasterize_landmarks."""
    arguments = dict(height=32, width=32)
    arguments.update(kwargs)
    with pytest.raises(ConfigError):
        rasterize_landmarks(canonical_frame(), **arguments)


def test_csim_histogram():
    """Run tests for csim_histogram."""
    histogram = csim_histogram([-1.0, -0.95, 0.0, 0.5, 1.0, 1.0], bins=4)
    assert_array_equal(histogram.edges, [-1, -0.5, 0, 0.5, 1])
    assert_array_equal(histogram.counts, [2, 0, 1, 3])

    assert csim_histogram([], bins=3).counts.sum() == 0
    with pytest.raises(ConfigError):
        csim_histogram([0.5], bins=0)
