# -*- coding: utf-8 -*-

"""
Tests for the lmsynth.io.render package.
"""

import os

import pytest
import numpy as np
from numpy.testing import assert_almost_equal

from lmsynth.errors import FormatError, ShapeMismatch
from lmsynth.io.render import (frame_svg, read_pgm, render_sequence,
                               write_pgm)
from lmsynth.landmarks.frame import LandmarkSequence
from lmsynth.landmarks.topology import WFLW98
from lmsynth.synth.template import canonical_frame


def test_frame_svg():
    """Every element of the topology is drawn."""
    svg = frame_svg(canonical_frame(), size=128, comment="a -- b")
    n_elements = svg.count("<polyline") + svg.count("<polygon") + \
        svg.count("<circle")
    assert n_elements == len(WFLW98.polylines())
    assert 'width="128"' in svg
    assert "<!-- a - - b -->" in svg
    assert svg.endswith("</svg>\n")


def test_pgm(tmpdir):
    """Values are written with 255 gray levels."""
    path = str(tmpdir.join("image.pgm"))
    write_pgm(path, [[0, 0.5, 1], [2, -1, 0.25]], comment="test")

    content = tmpdir.join("image.pgm").read().splitlines()
    assert content[:4] == ["P2", "# test", "3 2", "255"]
    assert content[4] == "0 128 255"
    assert_almost_equal(read_pgm(path), [[0, 128 / 255, 1],
                                         [1, 0, 64 / 255]])


def test_pgm_channel(tmpdir):
    """Images with a single channel axis are accepted."""
    path = str(tmpdir.join("image.pgm"))
    write_pgm(path, np.ones((2, 2, 1)))
    assert_almost_equal(read_pgm(path), np.ones((2, 2)))

    with pytest.raises(ShapeMismatch):
        write_pgm(path, np.ones((2, 2, 3)))


def test_read_pgm_invalid(tmpdir):
    """Only plain PGM files are read."""
    path = tmpdir.join("image.ppm")
    path.write("P3\n1 1\n255\n0 0 0\n")
    with pytest.raises(FormatError):
        read_pgm(str(path))


@pytest.mark.parametrize("content", [
    "P2\n2 2\n255\n0 0 0\n",
    "P2\n2 x\n255\n0 0 0 0\n",
    "P2\n",
])
def test_read_pgm_malformed(tmpdir, content):
    """A truncated or malformed PGM file raises FormatError."""
    path = tmpdir.join("image.pgm")
    path.write(content)
    with pytest.raises(FormatError):
        read_pgm(str(path))


@pytest.mark.parametrize("raster, extensions", [
    (None, [".svg"]),
    ((16, 16), [".svg", ".pgm"]),
])
def test_render_sequence(tmpdir, raster, extensions):
    """Run tests for render_sequence."""
    frame = canonical_frame()
    directory = str(tmpdir.join("frames"))
    written = render_sequence(LandmarkSequence([frame, frame, frame]),
                              directory, svg_size=64, raster=raster)

    expected = [os.path.join(directory, "frame_{:03d}{}".format(k, ext))
                for k in range(3) for ext in extensions]
    assert written == expected
    assert all(os.path.exists(name) for name in written)
    if raster is not None:
        assert read_pgm(written[1]).shape == raster
