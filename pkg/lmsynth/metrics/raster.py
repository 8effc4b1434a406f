# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.metrics.raster` module renders landmark frames as
single-channel images, so that image metrics such as
:func:`~lmsynth.metrics.similarity.ssim` can compare them.
"""

import numpy as np

from lmsynth.errors import ConfigError, OutOfRange
from lmsynth.landmarks.frame import as_coords
from lmsynth.landmarks.topology import WFLW98

STYLES = ("lines", "points")
MIN_SIZE = 16


def pixel_coordinates(frame, height, width, extent=1.2):
    """Maps the normalized coordinates of a frame to pixel coordinates: the
    square ``[-extent, extent]^2`` is mapped to the whole image, ``x`` to the
    columns and ``y`` to the rows.

    :returns: an array of shape ``(98, 2)`` of ``(column, row)`` pairs.
    """
    coords = as_coords(frame)
    columns = (coords[:, 0] / extent + 1) / 2 * (width - 1)
    rows = (coords[:, 1] / extent + 1) / 2 * (height - 1)
    return np.stack([columns, rows], axis=1)


def _segment_distances(pixels, start, end):
    """Distance from each pixel to the segment ``[start, end]``."""
    direction = end - start
    length2 = np.dot(direction, direction)
    if length2 == 0:
        return np.linalg.norm(pixels - start, axis=1)
    t = np.clip(np.dot(pixels - start, direction) / length2, 0, 1)
    return np.linalg.norm(pixels - start - t[:, np.newaxis] * direction,
                          axis=1)


def rasterize_landmarks(frame, height, width, style="lines", sigma=1.0,
                        topology=WFLW98, extent=1.2):
    """Renders a frame as an anti-aliased single-channel image.

    Each pixel has the value ``exp(-d^2 / (2 sigma^2))``, where ``d`` is its
    distance, in pixels, to the closest drawn element: the polylines of the
    topology in the ``"lines"`` style, or the landmarks themselves in the
    ``"points"`` style.

    :param frame: a :class:`~lmsynth.landmarks.frame.LandmarkFrame`.
    :param height: the height of the image, at least 16.
    :param width: the width of the image, at least 16.
    :param style: ``"lines"`` or ``"points"``.
    :param sigma: the width of the strokes, in pixels.
    :param topology: the topology giving the polylines.
    :param extent: half the side of the square of normalized coordinates
        mapped to the image.
    :returns: an array of shape ``(height, width, 1)`` with values in
        ``[0, 1]``.
    :raises OutOfRange: if a parameter is out of range.
    """
    # pylint: disable=too-many-arguments,too-many-locals
    if height < MIN_SIZE or width < MIN_SIZE:
        raise OutOfRange("the image should be at least {0}x{0}, got "
                         "{1}x{2}".format(MIN_SIZE, height, width))
    if style not in STYLES:
        raise ConfigError('unknown style "{}"'.format(style))
    if not sigma > 0:
        raise OutOfRange("sigma should be positive, got {}".format(sigma))

    points = pixel_coordinates(frame, height, width, extent)
    rows, columns = np.mgrid[0:height, 0:width]
    pixels = np.stack([columns.ravel(), rows.ravel()],
                      axis=1).astype(np.float64)

    distance = np.full(pixels.shape[0], np.inf)
    if style == "points":
        for point in points:
            distance = np.minimum(distance,
                                  np.linalg.norm(pixels - point, axis=1))
    else:
        for indices, closed in topology.polylines():
            indices = list(indices)
            if closed:
                indices.append(indices[0])
            if len(indices) == 1:
                indices.append(indices[0])
            for i, j in zip(indices[:-1], indices[1:]):
                distance = np.minimum(distance, _segment_distances(
                    pixels, points[i], points[j]))

    image = np.exp(-0.5 * (distance / sigma) ** 2)
    return image.reshape(height, width, 1)
