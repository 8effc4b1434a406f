# -*- coding: utf-8 -*-

"""
Tests for the lmsynth.metrics.similarity module.
"""

import pytest
import numpy as np
from scipy import linalg

from lmsynth.errors import (DataError, DatasetTooSmall, DimensionMismatch,
                            ShapeMismatch, ZeroVector)
from lmsynth.metrics.similarity import (GaussianStats, csim,
                                        frechet_distance, ssim)


@pytest.mark.parametrize("e1, e2, value", [
    ([1, 0], [0, 1], 0.0),
    ([1, 0], [3, 0], 1.0),
    ([1, 1], [-2, -2], -1.0),
    ([1, 0], [1, 1], np.sqrt(0.5)),
])
def test_csim(e1, e2, value):
    """Run tests for csim."""
    assert csim(e1, e2) == pytest.approx(value)


def test_csim_errors():
    """Run tests for the checks of csim."""
    with pytest.raises(ShapeMismatch):
        csim([1, 0], [1, 0, 0])
    with pytest.raises(ZeroVector):
        csim([0, 0], [1, 0])


def test_ssim():
    """SSIM is 1 for identical images and decreases with the noise."""
    rng = np.random.default_rng(0)
    image = rng.uniform(0, 1, (32, 32))
    assert ssim(image, image) == pytest.approx(1.0)
    assert ssim(image[:, :, np.newaxis], image) == pytest.approx(1.0)

    slightly = np.clip(image + rng.normal(0, 0.05, image.shape), 0, 1)
    heavily = np.clip(image + rng.normal(0, 0.3, image.shape), 0, 1)
    assert 1.0 > ssim(image, slightly) > ssim(image, heavily) > -1.0


def test_ssim_errors():
    """Run tests for the checks of ssim."""
    with pytest.raises(ShapeMismatch):
        ssim(np.zeros((16, 16)), np.zeros((16, 17)))
    with pytest.raises(ShapeMismatch):
        ssim(np.zeros((10, 10)), np.zeros((10, 10)))
    with pytest.raises(ShapeMismatch):
        ssim(np.zeros((16, 16, 3)), np.zeros((16, 16, 3)))


def test_frechet_distance_identical():
    """The distance between identical statistics is 0."""
    features = np.random.default_rng(0).normal(size=(50, 4))
    stats = GaussianStats.from_features(features)
    assert frechet_distance(stats, stats) == pytest.approx(0.0, abs=1e-9)


def test_frechet_distance_diagonal():
    """With diagonal covariances, the distance has a closed form."""
    s1 = GaussianStats([0, 0, 1], np.diag([1.0, 4.0, 9.0]))
    s2 = GaussianStats([1, 2, 1], np.diag([4.0, 1.0, 9.0]))
    expected = 1 + 4 + 0 + (1 - 2) ** 2 + (2 - 1) ** 2 + 0
    assert frechet_distance(s1, s2) == pytest.approx(expected)


def test_frechet_distance_sqrtm():
    """The distance matches the formula computed with the matrix square
    root of the product of the covariances."""
    rng = np.random.default_rng(1)
    s1 = GaussianStats.from_features(rng.normal(size=(40, 3)))
    s2 = GaussianStats.from_features(rng.normal(1, 2, size=(40, 3)))
    root = linalg.sqrtm(s1.covariance @ s2.covariance).real
    expected = (np.sum((s1.mean - s2.mean) ** 2) +
                np.trace(s1.covariance + s2.covariance - 2 * root))
    assert frechet_distance(s1, s2) == pytest.approx(expected)
    assert frechet_distance(s2, s1) == pytest.approx(expected)


def test_gaussian_stats_errors():
    """Run tests for the checks of GaussianStats."""
    with pytest.raises(DimensionMismatch):
        frechet_distance(GaussianStats([0], [[1]]),
                         GaussianStats([0, 0], np.eye(2)))
    with pytest.raises(ShapeMismatch):
        GaussianStats([0, 0], np.eye(3))
    with pytest.raises(DataError):
        GaussianStats([0, 0], [[1, 0.5], [0, 1]])
    with pytest.raises(DatasetTooSmall):
        GaussianStats.from_features(np.zeros((1, 3)))
