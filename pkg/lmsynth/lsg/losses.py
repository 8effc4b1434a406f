# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.lsg.losses` module provides the loss terms of the landmark
sequence generator.

The adversarial terms use the non-saturating binary cross-entropy: the
discriminators are trained to label real samples 1 and generated samples 0,
and the generator term is the cross-entropy of the generated samples against
the label 1.
"""

import numpy as np
from scipy import special

from lmsynth.autodiff import Tensor, ops
from lmsynth.errors import IdentityCollision

LOSS_TERMS = ("L_D1", "L_D2", "L_S1", "L_S2", "L_rec")


def _frames(frames):
    """Stacks a list of frame tensors of shape ``(B, 196)`` along the batch
    axis."""
    if isinstance(frames, (list, tuple)):
        return ops.concat(frames, axis=0)
    return ops.as_tensor(frames)


def adv_losses_d1(model, real_frames, fake_frames):
    """The frame realness adversarial losses.

    :param model: an :class:`~lmsynth.lsg.model.LsgModel`.
    :param real_frames: real flattened frames, of shape ``(N, 196)``.
    :param fake_frames: generated flattened frames, of shape ``(M, 196)``
        (or a list of such tensors).
    :returns: a tuple ``(d_loss, g_loss)``: the discriminator loss
        ``BCE(D1(real), 1) + BCE(D1(fake), 0)`` (each averaged per frame), and
        the generator term ``BCE(D1(fake), 1)``.
    """
    real_logits = model.d1(_frames(real_frames))
    fake_logits = model.d1(_frames(fake_frames))

    d_loss = ops.add(ops.bce_with_logits(real_logits, 1.0),
                     ops.bce_with_logits(fake_logits, 0.0))
    g_loss = ops.bce_with_logits(fake_logits, 1.0)
    return d_loss, g_loss


def pair_logits(model, frames_a, frames_b):
    """Returns the same-identity logits of ``d2`` for pairs of flattened
    frames."""
    return model.d2(ops.concat((_frames(frames_a), _frames(frames_b)),
                               axis=1))


def adv_losses_d2(model, input_frames, generated_frames, negative_frames,
                  input_ids, negative_ids, positive_frames=None):
    """The same-identity adversarial losses.

    The discriminator scores pairs of frames: ``(input, positive)`` pairs of
    the same identity are labeled 1, ``(input, negative)`` pairs of different
    identities and ``(input, generated)`` pairs are labeled 0.

    :param model: an :class:`~lmsynth.lsg.model.LsgModel`.
    :param input_frames: the input frames, of shape ``(N, 196)``.
    :param generated_frames: the generated frames paired with the inputs, of
        shape ``(N, 196)``.
    :param negative_frames: frames of other identities paired with the inputs,
        of shape ``(N, 196)``.
    :param input_ids: the identity labels of the inputs.
    :param negative_ids: the identity labels of the negative frames.
    :param positive_frames: real frames of the identities of the inputs, of
        shape ``(N, 196)``, or ``None``.
    :returns: a tuple ``(d_loss, g_loss)``: the discriminator loss, the mean
        cross-entropy over all the pairs, and the generator term
        ``BCE(D2(input, generated), 1)``.
    :raises IdentityCollision: if a negative frame has the identity of its
        input.
    """
    # pylint: disable=too-many-arguments
    input_ids = np.atleast_1d(input_ids)
    negative_ids = np.atleast_1d(negative_ids)
    collisions = np.flatnonzero(input_ids == negative_ids)
    if collisions.size:
        raise IdentityCollision(
            "negative pair {} shares the identity {} of its input".format(
                collisions[0], input_ids[collisions[0]]))

    inputs = _frames(input_frames)
    generated_logits = pair_logits(model, inputs, generated_frames)
    logits = [pair_logits(model, inputs, negative_frames), generated_logits]
    targets = [np.zeros(generated_logits.shape),
               np.zeros(generated_logits.shape)]
    if positive_frames is not None:
        logits.insert(0, pair_logits(model, inputs, positive_frames))
        targets.insert(0, np.ones(generated_logits.shape))

    d_loss = ops.bce_with_logits(ops.concat(logits, axis=0),
                                 np.concatenate(targets))
    g_loss = ops.bce_with_logits(generated_logits, 1.0)
    return d_loss, g_loss


def loss_support_hidden(model, hidden_states, true_ids):
    """The support task on the final hidden states of the Bi-LSTM: the
    softmax cross-entropy of the ``support_hidden`` classifier against the
    identities of the sequences.

    :param model: an :class:`~lmsynth.lsg.model.LsgModel`.
    :param hidden_states: a tensor of shape ``(B, 2H)``.
    :param true_ids: the identity labels of the ``B`` sequences.
    :raises UnknownClass: if a label is not a class of the model.
    """
    return ops.softmax_cross_entropy(model.support_hidden(hidden_states),
                                     model.class_indices(true_ids))


def loss_support_output(model, generated, true_ids):
    """The support task on the generated frames: the softmax cross-entropy of
    the ``support_output`` classifier on each generated frame, averaged over
    the ``K`` frames.

    :param model: an :class:`~lmsynth.lsg.model.LsgModel`.
    :param generated: the ``K`` generated frames, tensors of shape
        ``(B, 196)``, or a
        :class:`~lmsynth.landmarks.frame.LandmarkSequence` (``B = 1``).
    :param true_ids: the identity labels of the ``B`` sequences.
    :raises UnknownClass: if a label is not a class of the model.
    """
    if hasattr(generated, "to_array"):
        generated = [Tensor(frame.reshape(1, -1))
                     for frame in generated.to_array()]
    indices = model.class_indices(true_ids)
    logits = model.support_output(_frames(generated))
    return ops.softmax_cross_entropy(logits, np.tile(indices, len(generated)))


def loss_reconstruction(generated, clean_frames):
    """The mean squared error between the generated frames and the clean
    frames of the training window.

    :param generated: the ``K`` generated frames, tensors of shape
        ``(B, 196)``.
    :param clean_frames: an array of shape ``(B, K, 196)``.
    """
    target = np.concatenate([clean_frames[:, k]
                             for k in range(clean_frames.shape[1])])
    return ops.mse(_frames(generated), target)


def total_lsg_loss(terms, config):
    """The weighted sum of the loss terms.

    :param terms: a mapping from term names (``"L_D1"``, ``"L_D2"``,
        ``"L_S1"``, ``"L_S2"``, and optionally ``"L_rec"``) to scalar tensors
        or floats.
    :param config: an :class:`~lmsynth.lsg.config.LsgConfig`.
    :returns: a scalar :class:`~lmsynth.autodiff.tensor.Tensor`.
    """
    weights = config.weights()
    total = Tensor(0.0)
    for name in LOSS_TERMS:
        if name not in terms:
            continue
        total = ops.add(total, ops.mul(terms[name], weights[name]))
    return total


def d2_pair_accuracy(model, frames_a, frames_b, same):
    """The accuracy of ``d2`` as a same-identity pair classifier.

    :param model: an :class:`~lmsynth.lsg.model.LsgModel`.
    :param frames_a: flattened frames, of shape ``(N, 196)``.
    :param frames_b: flattened frames, of shape ``(N, 196)``.
    :param same: ``N`` booleans, ``True`` for same-identity pairs.
    :returns: the fraction of pairs whose predicted probability is on the
        side of 0.5 given by ``same``.
    """
    logits = pair_logits(model, np.asarray(frames_a), np.asarray(frames_b))
    predicted = special.expit(logits.value.reshape(-1)) > 0.5
    return float(np.mean(predicted == np.asarray(same, dtype=bool)))
