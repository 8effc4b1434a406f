# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.metrics.similarity` module provides the similarity
measures of the evaluation: the cosine similarity of identity embeddings
(CSIM), the structural similarity of single-channel images (SSIM), and the
Fréchet distance between Gaussian statistics of features.
"""

import numpy as np
from scipy import linalg, signal

from lmsynth.errors import (DataError, DatasetTooSmall, DimensionMismatch,
                            ShapeMismatch, ZeroVector)
from lmsynth.utils import windows

SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
SSIM_C1 = 0.01 ** 2
SSIM_C2 = 0.03 ** 2


def csim(e1, e2):
    """Returns the cosine similarity of two vectors, in ``[-1, 1]``. The
    vectors are normalized before their dot product is computed.

    :raises ShapeMismatch: if the vectors do not have the same shape.
    :raises ZeroVector: if a vector has a zero norm.
    """
    e1 = np.asarray(e1, dtype=np.float64).reshape(-1)
    e2 = np.asarray(e2, dtype=np.float64).reshape(-1)
    if e1.shape != e2.shape:
        raise ShapeMismatch("csim: vectors of sizes {} and {}".format(
            e1.size, e2.size))
    norm1 = np.linalg.norm(e1)
    norm2 = np.linalg.norm(e2)
    if norm1 == 0 or norm2 == 0:
        raise ZeroVector("csim is undefined for zero vectors")

    return float(np.clip(np.dot(e1 / norm1, e2 / norm2), -1.0, 1.0))


def _single_channel(image):
    image = np.asarray(image, dtype=np.float64)
    if image.ndim == 3 and image.shape[2] == 1:
        image = image[:, :, 0]
    if image.ndim != 2:
        raise ShapeMismatch("ssim needs single-channel images, got shape "
                            "{}".format(image.shape))
    return image


def ssim(a, b):
    """Returns the mean structural similarity of two single-channel images
    with values in ``[0, 1]``.

    The local statistics are computed with an 11x11 Gaussian window of
    standard deviation 1.5, over the positions where the window fits inside
    the image, with the constants ``C1 = 0.01^2`` and ``C2 = 0.03^2``.

    :param a: an array of shape ``(H, W)`` or ``(H, W, 1)``.
    :param b: an array of the same shape.
    :returns: a float in ``[-1, 1]``.
    :raises ShapeMismatch: if the shapes differ, or if the images are smaller
        than the window.
    """
    a = _single_channel(a)
    b = _single_channel(b)
    if a.shape != b.shape:
        raise ShapeMismatch("ssim: images of shapes {} and {}".format(
            a.shape, b.shape))
    if min(a.shape) < SSIM_WINDOW:
        raise ShapeMismatch("ssim: the images should be at least {0}x{0}, got "
                            "{1}".format(SSIM_WINDOW, a.shape))

    window = windows.outer(windows.gaussian(SSIM_WINDOW, SSIM_SIGMA))

    def filtered(image):
        return signal.convolve2d(image, window, mode="valid")

    mu_a = filtered(a)
    mu_b = filtered(b)
    var_a = filtered(a * a) - mu_a ** 2
    var_b = filtered(b * b) - mu_b ** 2
    cov = filtered(a * b) - mu_a * mu_b

    ssim_map = ((2 * mu_a * mu_b + SSIM_C1) * (2 * cov + SSIM_C2)) / \
        ((mu_a ** 2 + mu_b ** 2 + SSIM_C1) * (var_a + var_b + SSIM_C2))
    return float(np.mean(ssim_map))


class GaussianStats(object):
    """The mean and covariance of a set of feature vectors.

    :param mean: a vector of size ``d``.
    :param covariance: a symmetric matrix of shape ``(d, d)``.
    :raises ShapeMismatch: if the shapes are inconsistent.
    :raises DataError: if the covariance is not symmetric.
    """
    def __init__(self, mean, covariance):
        self.mean = np.asarray(mean, dtype=np.float64).reshape(-1)
        self.covariance = np.atleast_2d(np.asarray(covariance,
                                                   dtype=np.float64))
        d = self.mean.size
        if self.covariance.shape != (d, d):
            raise ShapeMismatch("a covariance of shape {} does not match a "
                                "mean of size {}".format(
                                    self.covariance.shape, d))
        if not np.allclose(self.covariance, self.covariance.T, atol=1e-12):
            raise DataError("the covariance matrix should be symmetric")
        self.covariance = 0.5 * (self.covariance + self.covariance.T)

    def __repr__(self):
        return "GaussianStats(dimension={})".format(self.dimension)

    @property
    def dimension(self):
        """The dimension ``d`` of the features."""
        return self.mean.size

    @classmethod
    def from_features(cls, features):
        """Estimates the statistics of feature vectors.

        :param features: an array of shape ``(N, d)``.
        :raises DatasetTooSmall: if there are fewer than 2 vectors.
        """
        features = np.asarray(features, dtype=np.float64)
        if features.ndim != 2 or features.shape[0] < 2:
            raise DatasetTooSmall("at least 2 feature vectors are needed, "
                                  "got an array of shape {}".format(
                                      features.shape))
        return cls(features.mean(axis=0),
                   np.cov(features, rowvar=False).reshape(
                       features.shape[1], features.shape[1]))


def _psd_sqrt(matrix):
    """Square root of a symmetric matrix, with its negative eigenvalues
    clipped to 0."""
    values, vectors = linalg.eigh(matrix)
    return (vectors * np.sqrt(np.clip(values, 0, None))) @ vectors.T


def frechet_distance(s1, s2):
    """Returns the Fréchet distance between two Gaussians,
    ``|mu1 - mu2|^2 + Tr(S1 + S2 - 2 (S1 S2)^(1/2))``.

    The trace of the square root is computed from the eigenvalues of the
    symmetric matrix ``S1^(1/2) S2 S1^(1/2)``, clipped to 0.

    :param s1: a :class:`GaussianStats`.
    :param s2: a :class:`GaussianStats`.
    :returns: a non-negative float.
    :raises DimensionMismatch: if the dimensions differ.
    """
    if s1.dimension != s2.dimension:
        raise DimensionMismatch("cannot compare statistics of dimensions {} "
                                "and {}".format(s1.dimension, s2.dimension))

    diff = s1.mean - s2.mean
    root1 = _psd_sqrt(s1.covariance)
    product = root1 @ s2.covariance @ root1
    eigenvalues = linalg.eigvalsh(0.5 * (product + product.T))
    trace_sqrt = np.sum(np.sqrt(np.clip(eigenvalues, 0, None)))

    distance = (diff @ diff + np.trace(s1.covariance) +
                np.trace(s2.covariance) - 2 * trace_sqrt)
    return float(max(distance, 0.0))
