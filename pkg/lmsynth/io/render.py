# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.io.render` module writes landmark frames as SVG wireframes
and single-channel images as plain (ASCII) PGM files.
"""

import logging
import os

import numpy as np

from lmsynth.errors import FormatError, ShapeMismatch
from lmsynth.landmarks.topology import WFLW98
from lmsynth.metrics.raster import pixel_coordinates, rasterize_landmarks

logger = logging.getLogger(__name__)

PGM_MAXVAL = 255


def frame_svg(frame, size=256, topology=WFLW98, extent=1.2, comment=None):
    """Returns the SVG document of a frame: one polyline per element of the
    topology, and a dot per isolated landmark.

    :param frame: a :class:`~lmsynth.landmarks.frame.LandmarkFrame`.
    :param size: the side of the image, in pixels.
    :param topology: the topology giving the polylines.
    :param extent: half the side of the square of normalized coordinates
        mapped to the image.
    :param comment: an optional text written in an XML comment.
    :returns: a string.
    """
    # pylint: disable=too-many-arguments
    points = pixel_coordinates(frame, size, size, extent)
    lines = ['<?xml version="1.0" encoding="UTF-8"?>']
    if comment:
        lines.append("<!-- {} -->".format(comment.replace("--", "- -")))
    lines.append('<svg xmlns="http://www.w3.org/2000/svg" width="{0}" '
                 'height="{0}" viewBox="0 0 {0} {0}">'.format(size))
    lines.append('<rect width="100%" height="100%" fill="white"/>')
    for indices, closed in topology.polylines():
        indices = list(indices)
        if len(indices) == 1:
            x, y = points[indices[0]]
            lines.append('<circle cx="{:.3f}" cy="{:.3f}" r="1.5" '
                         'fill="black"/>'.format(x, y))
            continue
        coords = " ".join("{:.3f},{:.3f}".format(*points[i])
                          for i in indices)
        lines.append('<{} points="{}" fill="none" stroke="black" '
                     'stroke-width="1"/>'.format(
                         "polygon" if closed else "polyline", coords))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_svg(filename, frame, **kwargs):
    """Writes the SVG document of a frame (see :func:`frame_svg`)."""
    with open(filename, "w", encoding="utf-8") as output:
        output.write(frame_svg(frame, **kwargs))


def write_pgm(filename, image, comment=None):
    """Writes a single-channel image with values in ``[0, 1]`` as a plain
    PGM file, with a maximum gray value of 255.

    :param filename: the name of the file.
    :param image: an array of shape ``(H, W)`` or ``(H, W, 1)``.
    :param comment: an optional comment written in the header.
    :raises ShapeMismatch: if the image does not have a single channel.
    """
    image = np.asarray(image, dtype=np.float64)
    if image.ndim == 3 and image.shape[2] == 1:
        image = image[:, :, 0]
    if image.ndim != 2:
        raise ShapeMismatch("a PGM image should have a single channel, got "
                         "shape {}".format(image.shape))

    levels = np.rint(np.clip(image, 0, 1) * PGM_MAXVAL).astype(int)
    with open(filename, "w", encoding="ascii") as output:
        output.write("P2\n")
        if comment:
            output.write("# {}\n".format(comment))
        output.write("{} {}\n{}\n".format(image.shape[1], image.shape[0],
                                          PGM_MAXVAL))
        for row in levels:
            output.write(" ".join(str(level) for level in row) + "\n")


def read_pgm(filename):
    """Reads a plain PGM file written by :func:`write_pgm`.

    :returns: an array of shape ``(H, W)`` with values in ``[0, 1]``.
    :raises FormatError: if the file is not a plain PGM file.
    """
    with open(filename, "r", encoding="ascii") as pgm:
        tokens = [token for line in pgm
                  for token in line.split("#", 1)[0].split()]
    if not tokens or tokens[0] != "P2":
        raise FormatError("{} is not a plain PGM file".format(filename))
    try:
        width, height, maxval = (int(token) for token in tokens[1:4])
        values = np.array([int(token) for token in tokens[4:]],
                          dtype=np.float64)
        return values.reshape(height, width) / maxval
    except ValueError as error:
        raise FormatError("{}: {}".format(filename, error))


def render_sequence(sequence, directory, svg_size=256, raster=None,
                    comment=None):
    """Writes the frames of a sequence to a directory, as ``frame_000.svg``,
    ``frame_001.svg``, ... and, if ``raster`` is given, ``frame_000.pgm``,
    ...

    :param sequence: a :class:`~lmsynth.landmarks.frame.LandmarkSequence`.
    :param directory: the output directory, created if needed.
    :param svg_size: the side of the SVG images, in pixels.
    :param raster: ``None``, or a tuple ``(height, width)``.
    :param comment: an optional text written in every file.
    :returns: the list of the written file names.
    """
    os.makedirs(directory, exist_ok=True)
    written = []
    for k, frame in enumerate(sequence):
        name = os.path.join(directory, "frame_{:03d}".format(k))
        write_svg(name + ".svg", frame, size=svg_size, comment=comment)
        written.append(name + ".svg")
        if raster is not None:
            image = rasterize_landmarks(frame, raster[0], raster[1])
            write_pgm(name + ".pgm", image, comment)
            written.append(name + ".pgm")
    logger.info("rendered %d frames to %s", len(sequence), directory)
    return written
