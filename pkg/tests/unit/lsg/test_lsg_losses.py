# -*- coding: utf-8 -*-

"""
Tests for the lmsynth.lsg.losses module.
"""

import pytest
import numpy as np

from lmsynth.autodiff import Tensor
from lmsynth.errors import IdentityCollision, UnknownClass
from lmsynth.landmarks.frame import LandmarkFrame
from lmsynth.landmarks.interpolate import upsample_linear
from lmsynth.lsg.config import LsgConfig
from lmsynth.lsg.losses import (adv_losses_d1, adv_losses_d2,
                                d2_pair_accuracy, loss_reconstruction,
                                loss_support_hidden, loss_support_output,
                                total_lsg_loss)
from lmsynth.lsg.model import LsgModel


@pytest.fixture
def model():
    """A small untrained generator with three classes."""
    config = LsgConfig(K=4, hidden_size=6, disc_hidden=6, support_hidden=6)
    return LsgModel(config, [0, 1, 2])


def frames(n, seed=0):
    """Returns random flattened frames."""
    return np.random.default_rng(seed).uniform(-1, 1, (n, 196))


def test_adv_losses_d1(model):
    """The adversarial losses are positive scalars."""
    d_loss, g_loss = adv_losses_d1(model, frames(3), [Tensor(frames(2, 1)),
                                                      Tensor(frames(2, 2))])
    assert d_loss.size == 1 and g_loss.size == 1
    assert d_loss.item() > 0
    assert g_loss.item() > 0


def test_adv_losses_d2(model):
    """Run tests for adv_losses_d2, with and without positive pairs."""
    d_loss, g_loss = adv_losses_d2(model, frames(3), frames(3, 1),
                                   frames(3, 2), [0, 1, 2], [1, 2, 0],
                                   frames(3, 3))
    assert d_loss.item() > 0
    assert g_loss.item() > 0

    d_loss, _ = adv_losses_d2(model, frames(3), frames(3, 1), frames(3, 2),
                              [0, 1, 2], [1, 2, 0])
    assert d_loss.item() > 0


def test_adv_losses_d2_collision(model):
    """A negative frame of the identity of its input is rejected."""
    with pytest.raises(IdentityCollision):
        adv_losses_d2(model, frames(3), frames(3, 1), frames(3, 2),
                      [0, 1, 2], [1, 1, 0])


def test_support_losses(model):
    """Run tests for the support losses."""
    hidden = Tensor(np.zeros((2, 12)))
    # Zero output weights give uniform probabilities over the classes
    untrained = model.support_hidden.layers[-1]
    untrained.weight.value = np.zeros(untrained.weight.shape)
    assert loss_support_hidden(model, hidden, [0, 2]).item() == \
        pytest.approx(np.log(3))

    sequence = upsample_linear(LandmarkFrame(frames(1)[0].reshape(98, 2)),
                               LandmarkFrame(frames(1, 1)[0].reshape(98, 2)),
                               4)
    assert loss_support_output(model, sequence, [1]).item() > 0
    with pytest.raises(UnknownClass):
        loss_support_output(model, sequence, [5])


def test_loss_reconstruction():
    """The reconstruction loss is the mean squared error against the clean
    frames."""
    clean = np.zeros((2, 3, 196))
    generated = [Tensor(np.full((2, 196), k)) for k in range(3)]
    assert loss_reconstruction(generated, clean).item() == \
        pytest.approx((0 + 1 + 4) / 3)


def test_total_lsg_loss():
    """The total loss is the weighted sum of the terms present."""
    config = LsgConfig(lambda_d1=2, lambda_d2=0.5, lambda_s_hidden=1,
                       lambda_s_output=3, lambda_rec=10)
    terms = {"L_D1": 1.0, "L_D2": 2.0, "L_S1": 3.0, "L_S2": 4.0}
    assert total_lsg_loss(terms, config).item() == pytest.approx(18.0)

    terms["L_rec"] = 0.5
    assert total_lsg_loss(terms, config).item() == pytest.approx(23.0)


def test_d2_pair_accuracy(model):
    """The pair accuracy is a fraction."""
    accuracy = d2_pair_accuracy(model, frames(4), frames(4, 1),
                                [True, False, True, False])
    assert accuracy in (0.0, 0.25, 0.5, 0.75, 1.0)


def silence(mlp):
    """Sets the output layer of an MLP to zero, so that its logits are 0."""
    output = mlp.layers[-1]
    output.weight.value = np.zeros(output.weight.shape)
    output.bias.value = np.zeros(output.bias.shape)


def test_adv_losses_at_zero_logits(model):
    """With logits of 0, each cross-entropy is ln 2: the discriminator loss
    of d1 is 2 ln 2, the generator terms are ln 2."""
    silence(model.d1)
    silence(model.d2)
    d_loss, g_loss = adv_losses_d1(model, frames(3), frames(5, 1))
    assert d_loss.item() == pytest.approx(2 * np.log(2))
    assert g_loss.item() == pytest.approx(np.log(2))

    d_loss, g_loss = adv_losses_d2(model, frames(3), frames(3, 1),
                                   frames(3, 2), [0, 1, 2], [1, 2, 0],
                                   frames(3, 3))
    assert d_loss.item() == pytest.approx(np.log(2))
    assert g_loss.item() == pytest.approx(np.log(2))


@pytest.mark.parametrize("scale, bound", [
    (1.0, 0.7),
    (10.0, 1e-4),
    (50.0, 1e-20),
])
def test_adv_losses_d1_separating(model, scale, bound):
    """The loss of a discriminator separating the real and generated frames
    vanishes as its margin grows, while the generator term grows."""
    hidden, output = model.d1.layers
    hidden.weight.value = np.zeros(hidden.weight.shape)
    hidden.weight.value[:, 0] = 1.0
    output.weight.value = np.zeros(output.weight.shape)
    output.weight.value[0, 0] = scale
    output.bias.value = np.zeros(output.bias.shape)

    real = np.full((3, 196), 0.5)
    fake = np.full((3, 196), -0.5)
    d_loss, g_loss = adv_losses_d1(model, real, fake)
    assert 0 <= d_loss.item() < bound
    assert g_loss.item() == pytest.approx(np.log1p(np.exp(scale)), rel=1e-6)


@pytest.mark.parametrize("n_classes", [2, 3, 5])
def test_support_losses_uniform(n_classes):
    """With uniform logits, both support losses equal ln C."""
    config = LsgConfig(K=3, hidden_size=4, disc_hidden=4, support_hidden=4)
    model = LsgModel(config, range(n_classes))
    silence(model.support_hidden)
    silence(model.support_output)
    labels = np.arange(2) % n_classes

    hidden = Tensor(frames(2)[:, :8])
    assert loss_support_hidden(model, hidden, labels).item() == \
        pytest.approx(np.log(n_classes))
    generated = [Tensor(frames(2, k)) for k in range(3)]
    assert loss_support_output(model, generated, labels).item() == \
        pytest.approx(np.log(n_classes))


def test_total_lsg_loss_without_reconstruction():
    """With a zero weight, the reconstruction term has no effect."""
    config = LsgConfig(lambda_d1=1, lambda_d2=2, lambda_s_hidden=0.5,
                       lambda_s_output=0.25)
    assert config.lambda_rec == 0
    terms = {"L_D1": 1.0, "L_D2": 1.0, "L_S1": 2.0, "L_S2": 4.0}
    expected = 1 + 2 + 1 + 1
    assert total_lsg_loss(terms, config).item() == pytest.approx(expected)
    terms["L_rec"] = 100.0
    assert total_lsg_loss(terms, config).item() == pytest.approx(expected)


def test_adv_losses_d2_collision_single():
    """A single colliding pair is enough to reject a batch."""
    config = LsgConfig(K=3, hidden_size=4, disc_hidden=4, support_hidden=4)
    model = LsgModel(config, [0, 1])
    with pytest.raises(IdentityCollision):
        adv_losses_d2(model, frames(1), frames(1, 1), frames(1, 2), 1, 1)
