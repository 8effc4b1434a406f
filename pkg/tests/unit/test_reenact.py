# -*- coding: utf-8 -*-

"""
Tests for the lmsynth.reenact module.
"""

import pytest
import numpy as np
from numpy.testing import assert_almost_equal

from lmsynth.autodiff import ops
from lmsynth.autodiff.gradcheck import gradient_check
from lmsynth.autodiff.optim import ParamStore
from lmsynth.errors import (ConfigError, OddDimension, ShapeMismatch,
                            ZeroEmbedding)
from lmsynth.reenact import (CONTOUR, LOSS_SETTINGS, ReenactLossWeights,
                             adv_multiscale_loss, boundary_loss,
                             downsample_half, identity_loss, mask_loss,
                             total_reenact_loss)
from lmsynth.synth.template import canonical_frame


def mean_discriminator(image):
    """A discriminator scoring an image by its mean value."""
    return ops.mean(image)


def test_downsample_half():
    """Run tests for downsample_half."""
    image = np.arange(16, dtype=float).reshape(4, 4)
    result = downsample_half(image)
    assert result.shape == (2, 2, 1)
    assert_almost_equal(result.value[:, :, 0], [[2.5, 4.5], [10.5, 12.5]])

    with pytest.raises(OddDimension):
        downsample_half(np.zeros((5, 4, 1)))
    with pytest.raises(ShapeMismatch):
        downsample_half(np.zeros(4))


def test_adv_multiscale_loss():
    """The discriminator terms vanish for perfect scores, and each scale adds
    its generator term."""
    shapes = []

    def discriminator(image):
        shapes.append(image.shape)
        return mean_discriminator(image)

    real = np.ones((8, 8, 3))
    fake = np.zeros((8, 8, 3))
    d_loss, g_loss = adv_multiscale_loss(fake, real, [discriminator] * 3)
    assert d_loss.item() == pytest.approx(0.0)
    assert g_loss.item() == pytest.approx(1.5)
    assert shapes == [(8, 8, 3)] * 2 + [(4, 4, 3)] * 2 + [(2, 2, 3)] * 2


def test_adv_multiscale_loss_errors():
    """Run tests for the argument checks of adv_multiscale_loss."""
    with pytest.raises(ShapeMismatch):
        adv_multiscale_loss(np.zeros((8, 8)), np.zeros((4, 4)),
                            [mean_discriminator])
    with pytest.raises(ConfigError):
        adv_multiscale_loss(np.zeros((8, 8)), np.zeros((8, 8)), [])
    with pytest.raises(OddDimension):
        adv_multiscale_loss(np.zeros((6, 6)), np.zeros((6, 6)),
                            [mean_discriminator] * 3)


def test_adv_multiscale_loss_gradient():
    """The generator term is differentiable with respect to the generated
    image, across the scales."""
    rng = np.random.default_rng(0)
    store = ParamStore()
    fake = store.add("fake", rng.uniform(0, 1, (4, 4)))
    real = rng.uniform(0, 1, (4, 4))

    def discriminator(image):
        return ops.tanh(ops.mul(image, image))

    report = gradient_check(
        lambda: adv_multiscale_loss(fake, real, [discriminator] * 2)[1],
        store)
    assert report.passed, report


def test_identity_loss():
    """Run tests for identity_loss."""
    def embed(image):
        return np.asarray(image).reshape(-1)[:3]

    image = np.zeros((2, 2, 1))
    image[0, 0] = 1
    other = np.zeros((2, 2, 1))
    other[0, 1] = 1
    assert identity_loss(image, image, embed).item() == pytest.approx(0.0)
    assert identity_loss(image, other, embed).item() == pytest.approx(1.0)

    with pytest.raises(ZeroEmbedding):
        identity_loss(image, np.zeros((2, 2, 1)), embed)
    with pytest.raises(ShapeMismatch):
        identity_loss(image, image, lambda _: np.ones((2, 2)))


def test_mask_loss():
    """Only the pixels of the mask contribute to the loss."""
    generated = np.ones((4, 4, 2))
    real = np.zeros((4, 4, 2))
    mask = np.zeros((4, 4))
    assert mask_loss(generated, real, mask).item() == pytest.approx(0.0)

    mask[:2] = 1
    assert mask_loss(generated, real, mask).item() == pytest.approx(0.5)

    with pytest.raises(ShapeMismatch):
        mask_loss(generated, real, np.zeros((4, 2)))
    with pytest.raises(ShapeMismatch):
        mask_loss(generated, np.zeros((4, 4, 3)), mask)


def test_boundary_loss():
    """The boundary loss compares the contour landmarks by default."""
    canonical = canonical_frame().coords
    shifted = canonical.copy()
    shifted[CONTOUR] += 0.5

    def landmarks(image):
        return shifted if image[0, 0, 0] else canonical

    generated = np.ones((2, 2, 1))
    real = np.zeros((2, 2, 1))
    assert boundary_loss(real, real, landmarks).item() == pytest.approx(0.0)
    assert boundary_loss(generated, real, landmarks).item() == \
        pytest.approx(0.125)
    assert boundary_loss(generated, real, landmarks, None).item() == \
        pytest.approx(0.125 * 33 / 98)


@pytest.mark.parametrize("setting, total", [
    ("vanilla", 1.0),
    ("+identity", 3.0),
    ("+mask", 6.0),
    ("+boundary", 10.0),
    (None, 10.0),
])
def test_total_reenact_loss(setting, total):
    """Each setting adds a term to the previous one."""
    terms = {"adversarial": 1.0, "identity": 2.0, "mask": 3.0,
             "boundary": 4.0}
    assert total_reenact_loss(terms, setting).item() == pytest.approx(total)


def test_total_reenact_loss_errors():
    """Run tests for the checks of total_reenact_loss."""
    with pytest.raises(ConfigError):
        total_reenact_loss({"adversarial": 1.0}, "+pose")
    with pytest.raises(ConfigError):
        total_reenact_loss({"perceptual": 1.0})
    with pytest.raises(ConfigError):
        ReenactLossWeights(mask=-1)
    assert list(LOSS_SETTINGS) == ["vanilla", "+identity", "+mask",
                                   "+boundary"]
    assert total_reenact_loss(
        {"mask": 2.0}, ReenactLossWeights(mask=0.5)).item() == \
        pytest.approx(1.0)
